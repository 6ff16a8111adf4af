#pragma once

#include <cstdint>
#include <vector>

namespace pairbec {

// Square CSR matrix, full (not triangle-only) storage; symmetric by
// construction wherever the assembly adds paired (r,c)/(c,r) entries.
struct CsrMatrix {
    int n = 0;
    std::vector<int> row_ptr;   // size n+1
    std::vector<int> col;       // size nnz, ascending within each row
    std::vector<double> val;

    int nnz() const { return static_cast<int>(col.size()); }
    std::vector<double> diagonal() const;
};

// Coordinate-format accumulator.  Duplicate (r,c) entries are summed on
// compression in insertion order, so adding every off-diagonal contribution
// as an adjacent (r,c)/(c,r) pair yields a bitwise-symmetric matrix.
class CooBuilder {
public:
    explicit CooBuilder(int n) : n_(n) {}

    void add(int r, int c, double v) { entries_.push_back({r, c, v}); }
    void add_symmetric(int r, int c, double v) {
        add(r, c, v);
        if (r != c) add(c, r, v);
    }
    void reserve(std::size_t nnz) { entries_.reserve(nnz); }

    CsrMatrix compressed() const;

private:
    struct Entry {
        int r, c;
        double v;
    };
    int n_;
    std::vector<Entry> entries_;
};

// B = A restricted to the rows/columns where keep[i] is true.
CsrMatrix restrict_matrix(const CsrMatrix& A, const std::vector<std::uint8_t>& keep);

// C = A + s*B.  Patterns may differ.
CsrMatrix add_scaled(const CsrMatrix& A, double s, const CsrMatrix& B);

}
