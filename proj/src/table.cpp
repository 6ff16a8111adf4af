#include "pairbec/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "pairbec/errors.hpp"

namespace pairbec {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw InputError("table needs at least one column");
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
        throw InputError("table row width does not match the column count");
    rows_.push_back(std::move(row));
}

namespace {

// Text cells hold plain tokens; quote defensively per RFC 4180 anyway.
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_cell(const Cell& cell) {
    if (const double* d = std::get_if<double>(&cell)) return format_number(*d);
    if (const long long* i = std::get_if<long long>(&cell))
        return std::to_string(*i);
    return csv_escape(std::get<std::string>(cell));
}

std::string json_cell(const Cell& cell) {
    if (const double* d = std::get_if<double>(&cell)) {
        if (!std::isfinite(*d)) return json_escape(format_number(*d));
        return format_number(*d);
    }
    if (const long long* i = std::get_if<long long>(&cell))
        return std::to_string(*i);
    return json_escape(std::get<std::string>(cell));
}

}  // namespace

void Table::write_csv(std::ostream& os) const {
    for (std::size_t c = 0; c < columns_.size(); ++c)
        os << (c ? "," : "") << csv_escape(columns_[c]);
    os << "\n";
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << csv_cell(row[c]);
        os << "\n";
    }
}

void Table::write_jsonl(std::ostream& os) const {
    for (const auto& row : rows_) {
        os << "{";
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << json_escape(columns_[c]) << ":"
               << json_cell(row[c]);
        os << "}\n";
    }
}

void Table::write_files(const std::string& path) const {
    std::ofstream csv(path);
    if (!csv) throw InputError("cannot open output file: " + path);
    write_csv(csv);
    csv.close();
    if (!csv) throw InputError("failed writing output file: " + path);

    std::string twin = path;
    const std::size_t dot = twin.find_last_of('.');
    const std::size_t slash = twin.find_last_of("/\\");
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        twin.resize(dot);
    twin += ".jsonl";
    std::ofstream jsonl(twin);
    if (!jsonl) throw InputError("cannot open output file: " + twin);
    write_jsonl(jsonl);
    jsonl.close();
    if (!jsonl) throw InputError("failed writing output file: " + twin);
}

}  // namespace pairbec
