#pragma once

#include <stdexcept>

namespace tausum {

// Input exceeds a documented budget (table size, convolution mass, ...).
struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter outside its admissible range (nu, grid size, mismatched X, ...).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A value left the mathematical domain of a formula (nonpositive log base).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace tausum
