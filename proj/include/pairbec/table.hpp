#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace pairbec {

// Result table with a fixed column set, written as CSV and as JSON lines.
// Floats are printed with up to 17 significant digits (round-trip exact);
// non-finite values appear as the literal inf / -inf / nan (quoted as strings
// on the JSON side, since JSON has no representation for them).

using Cell = std::variant<double, long long, std::string>;

std::string format_number(double v);  // %.17g

class Table {
public:
    explicit Table(std::vector<std::string> columns);

    const std::vector<std::string>& columns() const { return columns_; }
    std::size_t row_count() const { return rows_.size(); }
    const std::vector<Cell>& row(std::size_t i) const { return rows_[i]; }

    void add_row(std::vector<Cell> row);  // size must match the column count

    void write_csv(std::ostream& os) const;
    void write_jsonl(std::ostream& os) const;

    // Writes `path` as CSV plus a JSONL twin next to it (extension replaced
    // by .jsonl, or appended when there is none).
    void write_files(const std::string& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

}
