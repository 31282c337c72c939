#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "mrv/core.hpp"

namespace mrv {

// ---------------------------------------------------------------------------
// Dense exact integer matrices

struct IntMat {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c)) {}

    static IntMat identity(int n)
    {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    Int& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[size_t(i) * cols + j]; }

    friend IntMat operator*(const IntMat& x, const IntMat& y)
    {
        assert(x.cols == y.rows);
        IntMat r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const Int& v = x.at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < y.cols; ++j)
                    if (y.at(k, j) != 0) r.at(i, j) += v * y.at(k, j);
            }
        return r;
    }

    friend bool operator==(const IntMat& x, const IntMat& y)
    {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

// rank r plus the multiset of torsion orders, i.e. Z^r + sum Z/d_i
struct AbelianGroup {
    int rank = 0;
    std::vector<Int> torsion;  // entries > 1, divisibility order

    int torsion_count() const { return int(torsion.size()); }
    int total_dim() const { return rank + torsion_count(); }
    bool trivial() const { return rank == 0 && torsion.empty(); }

    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b)
    {
        return a.rank == b.rank && a.torsion == b.torsion;
    }
    friend bool operator!=(const AbelianGroup& a, const AbelianGroup& b) { return !(a == b); }
};

struct SmithResult {
    std::vector<Int> diagonal;  // length min(rows, cols), d1 | d2 | ...
    IntMat left;                // rows x rows, unimodular
    IntMat right;               // cols x cols, unimodular

    IntMat diagonal_matrix(int rows, int cols) const
    {
        IntMat d(rows, cols);
        for (size_t i = 0; i < diagonal.size(); ++i) d.at(int(i), int(i)) = diagonal[i];
        return d;
    }
};

// Smith normal form by unimodular row/column operations: left * m * right is
// diagonal with a divisibility chain. Total on any matrix, including empty.
inline SmithResult smith_normal_form(const IntMat& m_in)
{
    IntMat m = m_in;
    const int rows = m.rows, cols = m.cols;
    IntMat L = IntMat::identity(rows);
    IntMat R = IntMat::identity(cols);

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols; ++c) std::swap(m.at(i, c), m.at(j, c));
        for (int c = 0; c < rows; ++c) std::swap(L.at(i, c), L.at(j, c));
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < rows; ++r) std::swap(m.at(r, i), m.at(r, j));
        for (int r = 0; r < cols; ++r) std::swap(R.at(r, i), R.at(r, j));
    };
    // row i -= q * row j
    auto row_sub = [&](int i, int j, const Int& q) {
        if (q == 0) return;
        for (int c = 0; c < cols; ++c) m.at(i, c) -= q * m.at(j, c);
        for (int c = 0; c < rows; ++c) L.at(i, c) -= q * L.at(j, c);
    };
    auto col_sub = [&](int i, int j, const Int& q) {
        if (q == 0) return;
        for (int r = 0; r < rows; ++r) m.at(r, i) -= q * m.at(r, j);
        for (int r = 0; r < cols; ++r) R.at(r, i) -= q * R.at(r, j);
    };
    auto negate_row = [&](int i) {
        for (int c = 0; c < cols; ++c) m.at(i, c) = -m.at(i, c);
        for (int c = 0; c < rows; ++c) L.at(i, c) = -L.at(i, c);
    };

    const int n = std::min(rows, cols);
    for (int t = 0; t < n; ++t) {
        // pivot: nonzero entry of least absolute value in the trailing block
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                const Int v = abs_int(m.at(i, j));
                if (v != 0 && (pi < 0 || v < best)) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (m.at(i, t) == 0) continue;
                Int q = m.at(i, t) / m.at(t, t);
                row_sub(i, t, q);
                if (m.at(i, t) != 0) {  // remainder becomes the smaller pivot
                    swap_rows(t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (m.at(t, j) == 0) continue;
                Int q = m.at(t, j) / m.at(t, t);
                col_sub(j, t, q);
                if (m.at(t, j) != 0) {
                    swap_cols(t, j);
                    clean = false;
                }
            }
        }
        if (m.at(t, t) < 0) negate_row(t);
    }

    // enforce d_t | d_{t+1}
    for (int t = 0; t + 1 < n; ++t) {
        for (int s = t + 1; s < n; ++s) {
            if (m.at(s, s) == 0) continue;
            if (m.at(t, t) == 0 || m.at(s, s) % m.at(t, t) != 0) {
                // fold entry (s,s) into column t, then re-clear the 2x2 block
                col_sub(t, s, Int(-1));
                bool clean = false;
                while (!clean) {
                    clean = true;
                    if (m.at(s, t) != 0) {
                        Int q = m.at(s, t) / (m.at(t, t) == 0 ? m.at(s, t) : m.at(t, t));
                        if (m.at(t, t) == 0) {
                            swap_rows(t, s);
                            clean = false;
                            continue;
                        }
                        row_sub(s, t, q);
                        if (m.at(s, t) != 0) {
                            swap_rows(t, s);
                            clean = false;
                        }
                    }
                    if (m.at(t, s) != 0) {
                        if (m.at(t, t) == 0) {
                            swap_cols(t, s);
                            clean = false;
                            continue;
                        }
                        Int q = m.at(t, s) / m.at(t, t);
                        col_sub(s, t, q);
                        if (m.at(t, s) != 0) {
                            swap_cols(t, s);
                            clean = false;
                        }
                    }
                }
                if (m.at(t, t) < 0) negate_row(t);
                if (m.at(s, s) < 0) negate_row(s);
            }
        }
    }

    SmithResult r;
    r.diagonal.resize(n);
    for (int t = 0; t < n; ++t) r.diagonal[t] = m.at(t, t);
    r.left = std::move(L);
    r.right = std::move(R);
    return r;
}

// Cokernel of the row lattice: Z^ambient / rowspan(relations).
inline AbelianGroup cokernel_structure(const IntMat& relations, int ambient_dim)
{
    assert(relations.cols == ambient_dim || relations.rows == 0);
    AbelianGroup g;
    if (relations.rows == 0) {
        g.rank = ambient_dim;
        return g;
    }
    SmithResult s = smith_normal_form(relations);
    int nonzero = 0;
    for (const Int& d : s.diagonal) {
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) g.torsion.push_back(d);
    }
    g.rank = ambient_dim - nonzero;
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
}

// ---------------------------------------------------------------------------
// Sparse integer row echelon (Hermite-style) for graded-piece quotients.
// Columns are processed in the caller's order; the reduced form is the unique
// Hermite basis of the row lattice for that order, so results do not depend
// on row insertion order.

using SparseRow = std::vector<std::pair<int, Int>>;  // (col, value), sorted by col

inline void sparse_axpy(SparseRow& r, const Int& c, const SparseRow& s)
{
    if (c == 0) return;
    SparseRow out;
    out.reserve(r.size() + s.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
        if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || s[j].first < r[i].first) {
            out.push_back({s[j].first, c * s[j].second});
            ++j;
        } else {
            Int v = r[i].second + c * s[j].second;
            if (v != 0) out.push_back({r[i].first, std::move(v)});
            ++i;
            ++j;
        }
    }
    r = std::move(out);
}

inline void sparse_scale(SparseRow& r, const Int& c)
{
    assert(c != 0);
    for (auto& [col, v] : r) v *= c;
}

// c1*r1 + c2*r2, tolerating zero coefficients
inline SparseRow sparse_combine(const Int& c1, const SparseRow& r1, const Int& c2,
                                const SparseRow& r2)
{
    SparseRow out;
    if (c1 != 0) {
        out = r1;
        sparse_scale(out, c1);
    }
    sparse_axpy(out, c2, r2);
    return out;
}

class IntLattice {
public:
    explicit IntLattice(int cols) : cols_(cols) {}

    void add_row(SparseRow row)
    {
        while (!row.empty()) {
            const int lead = row.front().first;
            auto it = pivots_.find(lead);
            if (it == pivots_.end()) {
                if (row.front().second < 0) sparse_scale(row, Int(-1));
                pivots_[lead] = int(rows_.size());
                rows_.push_back(std::move(row));
                return;
            }
            SparseRow& p = rows_[it->second];
            const Int a = p.front().second;
            const Int b = row.front().second;
            if (b % a == 0) {
                sparse_axpy(row, -(b / a), p);
            } else {
                Int u, v;
                const Int g = xgcd(a, b, u, v);
                // (p, row) -> (u*p + v*row, (a/g)*row - (b/g)*p): determinant
                // (ua + vb)/g = 1, so the lattice is unchanged
                SparseRow np = sparse_combine(u, p, v, row);
                row = sparse_combine(a / g, row, -(b / g), p);
                p = std::move(np);
                assert(!p.empty() && p.front().first == lead && p.front().second == g);
            }
        }
    }

    // Reduce each pivot row's entries at other pivot columns into [0, pivot).
    // Ascending column order: reducing at column c only touches columns > c.
    void back_substitute()
    {
        std::vector<int> cols_asc;
        cols_asc.reserve(pivots_.size());
        for (const auto& [c, idx] : pivots_) cols_asc.push_back(c);
        std::sort(cols_asc.begin(), cols_asc.end());
        for (int c : cols_asc) {
            const SparseRow& p = rows_[pivots_[c]];
            const Int d = p.front().second;
            for (const auto& [c2, idx2] : pivots_) {
                if (c2 == c) continue;
                SparseRow& q = rows_[idx2];
                auto it = std::lower_bound(q.begin(), q.end(), c,
                                           [](const auto& e, int col) { return e.first < col; });
                if (it == q.end() || it->first != c) continue;
                Int k = floor_div(it->second, d);
                sparse_axpy(q, -k, p);
            }
        }
    }

    const std::map<int, int>& pivots() const { return pivots_; }
    const SparseRow& row(int idx) const { return rows_[idx]; }

    bool has_pivot(int col) const { return pivots_.count(col) > 0; }

    const SparseRow* pivot_row(int col) const
    {
        auto it = pivots_.find(col);
        return it == pivots_.end() ? nullptr : &rows_[it->second];
    }

    // Residue of a vector modulo the lattice (left-to-right reduction).
    SparseRow reduce(SparseRow v) const
    {
        SparseRow out;
        while (!v.empty()) {
            const int lead = v.front().first;
            auto it = pivots_.find(lead);
            if (it == pivots_.end()) {
                out.push_back(v.front());
                v.erase(v.begin());
                continue;
            }
            const SparseRow& p = rows_[it->second];
            const Int& d = p.front().second;
            Int k = floor_div(v.front().second, d);
            sparse_axpy(v, -k, p);
            if (!v.empty() && v.front().first == lead) {
                out.push_back(v.front());
                v.erase(v.begin());
            }
        }
        return out;
    }

    bool contains(SparseRow v) const { return reduce(std::move(v)).empty(); }

private:
    int cols_;
    std::vector<SparseRow> rows_;
    std::map<int, int> pivots_;  // col -> row index
};

// ---------------------------------------------------------------------------
// F2 linear algebra on bit-packed rows

struct F2Vec {
    std::vector<uint64_t> w;

    explicit F2Vec(int cols = 0) : w((size_t(cols) + 63) / 64, 0) {}

    bool get(int i) const { return (w[size_t(i) >> 6] >> (i & 63)) & 1; }
    void set(int i) { w[size_t(i) >> 6] |= uint64_t(1) << (i & 63); }
    void flip(int i) { w[size_t(i) >> 6] ^= uint64_t(1) << (i & 63); }

    void operator^=(const F2Vec& o)
    {
        assert(w.size() == o.w.size());
        for (size_t i = 0; i < w.size(); ++i) w[i] ^= o.w[i];
    }

    bool zero() const
    {
        for (uint64_t x : w)
            if (x) return false;
        return true;
    }

    int leading(int cols) const
    {
        for (int i = 0; i < cols; ++i)
            if (get(i)) return i;
        return -1;
    }

    friend bool operator==(const F2Vec& a, const F2Vec& b) { return a.w == b.w; }
};

struct F2Mat {
    int cols = 0;
    std::vector<F2Vec> rows;

    F2Mat() = default;
    explicit F2Mat(int c) : cols(c) {}
    F2Mat(int r, int c) : cols(c), rows(r, F2Vec(c)) {}

    void add_row(F2Vec v) { rows.push_back(std::move(v)); }

    int nrows() const { return int(rows.size()); }
};

struct F2Reduced {
    int rank = 0;
    F2Mat row_basis;     // reduced row echelon rows, pivot columns ascending
    F2Mat kernel_basis;  // basis of {x : m x = 0}, one row per kernel vector
    std::vector<int> pivot_cols;
};

inline F2Reduced f2_row_reduce(const F2Mat& m)
{
    F2Reduced out;
    out.row_basis.cols = m.cols;
    out.kernel_basis.cols = m.cols;

    std::vector<F2Vec> rows = m.rows;
    std::vector<int> pivots;  // column of each echelon row
    for (auto& r : rows) {
        for (size_t k = 0; k < pivots.size(); ++k)
            if (r.get(pivots[k])) r ^= out.row_basis.rows[k];
        int lead = r.leading(m.cols);
        if (lead < 0) continue;
        // keep fully reduced: clear this column above
        for (size_t k = 0; k < pivots.size(); ++k)
            if (out.row_basis.rows[k].get(lead)) out.row_basis.rows[k] ^= r;
        out.row_basis.rows.push_back(r);
        pivots.push_back(lead);
    }
    // sort echelon rows by pivot column
    std::vector<size_t> order(pivots.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pivots[a] < pivots[b]; });
    {
        std::vector<F2Vec> sorted_rows;
        std::vector<int> sorted_pivots;
        for (size_t i : order) {
            sorted_rows.push_back(out.row_basis.rows[i]);
            sorted_pivots.push_back(pivots[i]);
        }
        out.row_basis.rows = std::move(sorted_rows);
        pivots = std::move(sorted_pivots);
    }
    out.rank = int(pivots.size());
    out.pivot_cols = pivots;

    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    for (int f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        F2Vec x(m.cols);
        x.set(f);
        for (size_t k = 0; k < pivots.size(); ++k)
            if (out.row_basis.rows[k].get(f)) x.set(pivots[k]);
        out.kernel_basis.rows.push_back(std::move(x));
    }
    return out;
}

inline int f2_rank(const F2Mat& m) { return f2_row_reduce(m).rank; }

// Does target lie in the row span of m?
inline bool f2_in_rowspan(const F2Mat& m, const F2Vec& target)
{
    F2Reduced red = f2_row_reduce(m);
    F2Vec t = target;
    for (size_t k = 0; k < red.pivot_cols.size(); ++k)
        if (t.get(red.pivot_cols[k])) t ^= red.row_basis.rows[k];
    return t.zero();
}

// m * x over F2, where x has one bit per column and rows index the output.
inline F2Vec f2_apply(const F2Mat& m, const F2Vec& x)
{
    F2Vec y(m.nrows());
    for (int i = 0; i < m.nrows(); ++i) {
        const F2Vec& row = m.rows[i];
        uint64_t acc = 0;
        for (size_t k = 0; k < row.w.size() && k < x.w.size(); ++k) acc ^= row.w[k] & x.w[k];
        if (__builtin_popcountll(acc) & 1) y.set(i);
    }
    return y;
}

}  // namespace mrv
