#pragma once

// Output surfaces. CSV carries only computed values (12 significant digits,
// '\n' endings), so identical inputs give byte-identical files; JSON mirrors
// the same columns as an array of row objects plus a meta object (version,
// seed, threads, wall_ms) that carries the run's timing.

#include <string>
#include <variant>
#include <vector>

#include "tausum/arith.hpp"
#include "tausum/verify.hpp"

namespace tausum {

inline constexpr const char* kVersion = "1.0.0";

inline constexpr const char* kVerifyCsvHeader =
    "X,p,nu,I_total,I_major,I_minor,R,minor_ratio,sup_minor,sup_major_resid";

// %.12g rendering used for every floating-point field in CSV output.
std::string fmt_g12(double v);

// A flat result record: ordered named fields of integer, real, text, or
// boolean type. One record = one CSV row under a matching header.
using FieldValue = std::variant<i64, double, std::string, bool>;

struct Record {
    std::vector<std::pair<std::string, FieldValue>> fields;

    void add(std::string name, FieldValue value) {
        fields.emplace_back(std::move(name), std::move(value));
    }
};

std::string record_csv_header(const Record& record);
std::string record_csv_row(const Record& record);

// Whole documents, newline-terminated and ready to write.
std::string records_csv(const std::vector<Record>& records);
std::string records_json(const std::vector<Record>& records, unsigned seed, int threads,
                         double wall_ms);

std::vector<Record> verify_records(const VerificationReport& report);
std::string verify_csv(const VerificationReport& report);
std::string verify_json(const VerificationReport& report);

}  // namespace tausum
