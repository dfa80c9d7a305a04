#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integers.hpp"

namespace disthom {

// Sparse integer matrix in triplet form. Convention throughout the project:
// a linear map acts on column vectors, so a boundary matrix for degree n has
// one column per degree-n basis tuple and one row per degree-(n-1) tuple.
// Canonical storage is row-major sorted with no zeros and no duplicates.
struct SparseIntMatrix {
    struct Triple {
        int row = 0;
        int col = 0;
        Int val;
    };

    int rows = 0;
    int cols = 0;
    std::vector<Triple> entries;

    SparseIntMatrix() = default;
    SparseIntMatrix(int r, int c) : rows(r), cols(c) {}

    std::size_t nnz() const { return entries.size(); }

    void add(int r, int c, Int v)
    {
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw InternalError("matrix entry out of bounds");
        if (sign_of(v) != 0) entries.push_back({r, c, std::move(v)});
    }

    // Sort row-major, merge duplicate coordinates, drop zeros.
    void canonicalize()
    {
        std::sort(entries.begin(), entries.end(), [](const Triple& a, const Triple& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        std::vector<Triple> out;
        out.reserve(entries.size());
        for (auto& e : entries) {
            if (!out.empty() && out.back().row == e.row && out.back().col == e.col)
                out.back().val += e.val;
            else
                out.push_back(std::move(e));
        }
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [](const Triple& e) { return sign_of(e.val) == 0; }),
                  out.end());
        entries = std::move(out);
    }

    bool is_zero() const
    {
        for (const auto& e : entries)
            if (sign_of(e.val) != 0) return false;
        return true;
    }

    std::vector<std::vector<Int>> to_dense() const
    {
        std::vector<std::vector<Int>> d(rows, std::vector<Int>(cols, Int(0)));
        for (const auto& e : entries) d[e.row][e.col] += e.val;
        return d;
    }

    static SparseIntMatrix from_dense(const std::vector<std::vector<Int>>& d)
    {
        SparseIntMatrix m(static_cast<int>(d.size()),
                          d.empty() ? 0 : static_cast<int>(d[0].size()));
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j)
                if (sign_of(d[i][j]) != 0) m.entries.push_back({i, j, d[i][j]});
        return m;
    }
};

// a * b with the column-vector convention; used for the d∘d = 0 assertions.
inline SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b)
{
    if (a.cols != b.rows) throw InternalError("multiply: dimension mismatch");
    // a indexed by column for fast access: col -> list of (row, val)
    std::vector<std::vector<std::pair<int, const Int*>>> acol(a.cols);
    for (const auto& e : a.entries) acol[e.col].push_back({e.row, &e.val});

    SparseIntMatrix out(a.rows, b.cols);
    std::map<int, Int> accum;
    int cur_col = -1;
    auto flush = [&]() {
        for (auto& [r, v] : accum)
            if (sign_of(v) != 0) out.entries.push_back({r, cur_col, std::move(v)});
        accum.clear();
    };
    // b is row-major; regroup by column first
    std::vector<SparseIntMatrix::Triple> bsorted = b.entries;
    std::sort(bsorted.begin(), bsorted.end(),
              [](const SparseIntMatrix::Triple& x, const SparseIntMatrix::Triple& y) {
                  return x.col != y.col ? x.col < y.col : x.row < y.row;
              });
    for (const auto& e : bsorted) {
        if (e.col != cur_col) {
            if (cur_col >= 0) flush();
            cur_col = e.col;
        }
        for (auto& [ar, av] : acol[e.row]) accum[ar] += *av * e.val;
    }
    if (cur_col >= 0) flush();
    out.canonicalize();
    return out;
}

// Text format used by the test and oracle harness:
//   rows cols nnz
//   row col value          (1-based indices, one triple per line)
inline void write_matrix_text(std::ostream& os, const SparseIntMatrix& m)
{
    os << m.rows << ' ' << m.cols << ' ' << m.nnz() << '\n';
    for (const auto& e : m.entries)
        os << e.row + 1 << ' ' << e.col + 1 << ' ' << e.val << '\n';
}

inline SparseIntMatrix read_matrix_text(std::istream& is)
{
    int rows = 0, cols = 0;
    std::size_t nnz = 0;
    if (!(is >> rows >> cols >> nnz)) throw StructuralError("matrix text: bad header");
    if (rows < 0 || cols < 0) throw StructuralError("matrix text: negative dimension");
    SparseIntMatrix m(rows, cols);
    for (std::size_t k = 0; k < nnz; ++k) {
        long r = 0, c = 0;
        std::string v;
        if (!(is >> r >> c >> v)) throw StructuralError("matrix text: truncated triple list");
        if (r < 1 || r > rows || c < 1 || c > cols)
            throw StructuralError("matrix text: index out of range");
        m.add(static_cast<int>(r - 1), static_cast<int>(c - 1), Int(v));
    }
    m.canonicalize();
    return m;
}

inline std::string matrix_to_string(const SparseIntMatrix& m)
{
    std::ostringstream os;
    write_matrix_text(os, m);
    return os.str();
}

} // namespace disthom
