#include "pairbec/sparse.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pairbec {

std::vector<double> CsrMatrix::diagonal() const {
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    for (int r = 0; r < n; ++r)
        for (int p = row_ptr[r]; p < row_ptr[r + 1]; ++p)
            if (col[p] == r) d[r] = val[p];
    return d;
}

CsrMatrix CooBuilder::compressed() const {
    // Stable counting sort by (r, c): keeps duplicate insertion order, which
    // makes the summation order identical for (r,c) and (c,r) duplicates.
    const std::size_t ne = entries_.size();
    std::vector<int> row_count(static_cast<std::size_t>(n_) + 1, 0);
    for (const Entry& e : entries_) ++row_count[static_cast<std::size_t>(e.r) + 1];
    std::partial_sum(row_count.begin(), row_count.end(), row_count.begin());

    std::vector<const Entry*> by_row(ne);
    {
        std::vector<int> cur(row_count.begin(), row_count.end() - 1);
        for (const Entry& e : entries_) by_row[static_cast<std::size_t>(cur[e.r]++)] = &e;
    }

    CsrMatrix A;
    A.n = n_;
    A.row_ptr.assign(static_cast<std::size_t>(n_) + 1, 0);
    A.col.reserve(ne);
    A.val.reserve(ne);

    std::vector<const Entry*> row_entries;
    for (int r = 0; r < n_; ++r) {
        row_entries.assign(by_row.begin() + row_count[r], by_row.begin() + row_count[r + 1]);
        std::stable_sort(row_entries.begin(), row_entries.end(),
                         [](const Entry* a, const Entry* b) { return a->c < b->c; });
        for (std::size_t i = 0; i < row_entries.size();) {
            const int c = row_entries[i]->c;
            double s = 0.0;
            for (; i < row_entries.size() && row_entries[i]->c == c; ++i) s += row_entries[i]->v;
            A.col.push_back(c);
            A.val.push_back(s);
        }
        A.row_ptr[static_cast<std::size_t>(r) + 1] = A.nnz();
    }
    return A;
}

CsrMatrix restrict_matrix(const CsrMatrix& A, const std::vector<std::uint8_t>& keep) {
    if (static_cast<int>(keep.size()) != A.n)
        throw std::runtime_error("restrict_matrix: mask size mismatch");
    std::vector<int> new_index(keep.size(), -1);
    int m = 0;
    for (int i = 0; i < A.n; ++i)
        if (keep[i]) new_index[i] = m++;

    CsrMatrix B;
    B.n = m;
    B.row_ptr.assign(static_cast<std::size_t>(m) + 1, 0);
    for (int r = 0; r < A.n; ++r) {
        if (!keep[r]) continue;
        for (int p = A.row_ptr[r]; p < A.row_ptr[r + 1]; ++p) {
            if (!keep[A.col[p]]) continue;
            B.col.push_back(new_index[A.col[p]]);
            B.val.push_back(A.val[p]);
        }
        B.row_ptr[static_cast<std::size_t>(new_index[r]) + 1] = B.nnz();
    }
    return B;
}

CsrMatrix add_scaled(const CsrMatrix& A, double s, const CsrMatrix& B) {
    if (A.n != B.n) throw std::runtime_error("add_scaled: size mismatch");
    CsrMatrix C;
    C.n = A.n;
    C.row_ptr.assign(static_cast<std::size_t>(A.n) + 1, 0);
    C.col.reserve(A.col.size() + B.col.size());
    C.val.reserve(A.col.size() + B.col.size());
    for (int r = 0; r < A.n; ++r) {
        int pa = A.row_ptr[r], pb = B.row_ptr[r];
        const int ea = A.row_ptr[r + 1], eb = B.row_ptr[r + 1];
        while (pa < ea || pb < eb) {
            const int ca = pa < ea ? A.col[pa] : C.n;
            const int cb = pb < eb ? B.col[pb] : C.n;
            if (ca < cb) {
                C.col.push_back(ca);
                C.val.push_back(A.val[pa++]);
            } else if (cb < ca) {
                C.col.push_back(cb);
                C.val.push_back(s * B.val[pb++]);
            } else {
                C.col.push_back(ca);
                C.val.push_back(A.val[pa++] + s * B.val[pb++]);
            }
        }
        C.row_ptr[static_cast<std::size_t>(r) + 1] = C.nnz();
    }
    return C;
}

}
