#include "tausum/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace tausum {

namespace {

using ordered_json = nlohmann::ordered_json;

// JSON numbers are rounded through the same 12-digit rendering as CSV, so
// the two formats agree at the printed precision.
double rounded_12(double v) {
    return std::stod(fmt_g12(v));
}

std::string field_csv(const FieldValue& value) {
    if (const i64* v = std::get_if<i64>(&value)) return std::to_string(*v);
    if (const double* v = std::get_if<double>(&value)) return fmt_g12(*v);
    if (const bool* v = std::get_if<bool>(&value)) return *v ? "true" : "false";
    return std::get<std::string>(value);
}

void field_json(ordered_json& obj, const std::string& name, const FieldValue& value) {
    if (const i64* v = std::get_if<i64>(&value))
        obj[name] = *v;
    else if (const double* v = std::get_if<double>(&value))
        obj[name] = rounded_12(*v);
    else if (const bool* v = std::get_if<bool>(&value))
        obj[name] = *v;
    else
        obj[name] = std::get<std::string>(value);
}

ordered_json meta_json(unsigned seed, int threads, double wall_ms) {
    ordered_json meta;
    meta["version"] = kVersion;
    meta["seed"] = seed;
    meta["threads"] = threads;
    meta["wall_ms"] = wall_ms;
    return meta;
}

}  // namespace

std::string fmt_g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string record_csv_header(const Record& record) {
    std::string out;
    for (std::size_t i = 0; i < record.fields.size(); ++i) {
        if (i > 0) out += ',';
        out += record.fields[i].first;
    }
    return out;
}

std::string record_csv_row(const Record& record) {
    std::string out;
    for (std::size_t i = 0; i < record.fields.size(); ++i) {
        if (i > 0) out += ',';
        out += field_csv(record.fields[i].second);
    }
    return out;
}

std::string records_csv(const std::vector<Record>& records) {
    if (records.empty()) return "";
    std::string out = record_csv_header(records.front()) + "\n";
    for (const Record& r : records) out += record_csv_row(r) + "\n";
    return out;
}

std::string records_json(const std::vector<Record>& records, unsigned seed, int threads,
                         double wall_ms) {
    ordered_json doc;
    doc["rows"] = ordered_json::array();
    for (const Record& r : records) {
        ordered_json obj;
        for (const auto& [name, value] : r.fields) field_json(obj, name, value);
        doc["rows"].push_back(std::move(obj));
    }
    doc["meta"] = meta_json(seed, threads, wall_ms);
    return doc.dump(2) + "\n";
}

std::vector<Record> verify_records(const VerificationReport& report) {
    std::vector<Record> out;
    for (const RatioRow& row : report.rows) {
        Record r;
        r.add("X", row.x);
        r.add("p", row.p);
        r.add("nu", row.nu);
        r.add("I_total", row.i_total);
        r.add("I_major", row.i_major);
        r.add("I_minor", row.i_minor);
        r.add("R", row.r);
        r.add("minor_ratio", row.minor_ratio);
        r.add("sup_minor", row.sup_minor);
        r.add("sup_major_resid", row.sup_major_resid);
        out.push_back(std::move(r));
    }
    return out;
}

std::string verify_csv(const VerificationReport& report) {
    std::string out = std::string(kVerifyCsvHeader) + "\n";
    for (const Record& r : verify_records(report)) out += record_csv_row(r) + "\n";
    return out;
}

std::string verify_json(const VerificationReport& report) {
    ordered_json doc;
    doc["rows"] = ordered_json::array();
    for (const Record& r : verify_records(report)) {
        ordered_json obj;
        for (const auto& [name, value] : r.fields) field_json(obj, name, value);
        doc["rows"].push_back(std::move(obj));
    }
    ordered_json meta = meta_json(report.meta.seed, report.meta.threads, report.meta.wall_ms);
    meta["tol"] = report.meta.tol;
    meta["grid_sizes"] = report.meta.grid_sizes;
    meta["predictions"] = ordered_json::array();
    for (double v : report.meta.predictions) meta["predictions"].push_back(rounded_12(v));
    doc["meta"] = std::move(meta);
    return doc.dump(2) + "\n";
}

}  // namespace tausum
