#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integers.hpp"
#include "sparse_matrix.hpp"

namespace disthom {

struct SNFOptions {
    bool want_witnesses = false;
    // Once the active block fits in this many rows and columns, finish densely.
    int dense_threshold = 400;
    // Hard fill budget; exceeding it aborts with BudgetError instead of swapping.
    std::size_t max_entries = 16u * 1024u * 1024u;
    // Total coefficient size budget in GMP limbs, so a reduction whose
    // entries blow up in bit length fails cleanly instead of thrashing.
    std::size_t max_limbs = 64u * 1024u * 1024u;
};

namespace detail {
inline std::size_t limbs_of(const Int& v) { return mpz_size(v.get_mpz_t()); }
} // namespace detail

using DenseIntMatrix = std::vector<std::vector<Int>>;

// Invariant factors of an integer matrix: diagonal d1 | d2 | ... | dk with
// every di >= 1, trailing zeros implicit (rank = k). When witnesses are
// requested, U (rows x rows) and V (cols x cols) are unimodular with
// U * M * V = diag(diagonal) padded to the input shape.
struct SNFResult {
    int rows = 0;
    int cols = 0;
    std::vector<Int> diagonal;
    std::optional<DenseIntMatrix> left;
    std::optional<DenseIntMatrix> right;

    int rank() const { return static_cast<int>(diagonal.size()); }

    std::vector<Int> torsion() const
    {
        std::vector<Int> t;
        for (const auto& d : diagonal)
            if (d > 1) t.push_back(d);
        return t;
    }
};

// Rewrite a multiset of nonzero diagonal values into the divisibility chain.
// Adjacent (gcd, lcm) exchanges sort every prime's exponent sequence; the
// loop is a bubble pass repeated to fixpoint.
inline void normalize_factor_chain(std::vector<Int>& d)
{
    for (auto& x : d) x = abs_of(x);
    std::sort(d.begin(), d.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            if (divides(d[i], d[i + 1])) continue;
            Int g = gcd_of(d[i], d[i + 1]);
            Int l = exact_div(d[i], g) * d[i + 1];
            d[i] = g;
            d[i + 1] = l;
            changed = true;
        }
    }
}

namespace detail {

// Diagonalize a dense block in place; returns the diagonal values in no
// particular divisibility order.
inline std::vector<Int> dense_diagonalize(DenseIntMatrix& a,
                                          std::size_t max_limbs = std::size_t(-1))
{
    std::vector<Int> vals;
    const int m = static_cast<int>(a.size());
    const int n = m == 0 ? 0 : static_cast<int>(a[0].size());
    for (int k = 0; k < std::min(m, n); ++k) {
        if (k % 4 == 0 && max_limbs != std::size_t(-1)) {
            std::size_t limbs = 0;
            for (const auto& row : a)
                for (const auto& v : row) limbs += limbs_of(v);
            if (limbs > max_limbs)
                throw BudgetError("smith_normal_form: coefficient size budget exceeded");
        }
        int pr = -1, pc = -1;
        for (int i = k; i < m; ++i)
            for (int j = k; j < n; ++j)
                if (sign_of(a[i][j]) != 0 &&
                    (pr < 0 || mpz_cmpabs(a[i][j].get_mpz_t(), a[pr][pc].get_mpz_t()) < 0)) {
                    pr = i;
                    pc = j;
                }
        if (pr < 0) break;
        std::swap(a[k], a[pr]);
        if (pc != k)
            for (int i = 0; i < m; ++i) std::swap(a[i][k], a[i][pc]);

        bool again = true;
        while (again) {
            again = false;
            for (int i = k + 1; i < m; ++i) {
                if (sign_of(a[i][k]) == 0) continue;
                Int q = round_div(a[i][k], a[k][k]);
                if (sign_of(q) != 0)
                    for (int j = k; j < n; ++j) a[i][j] -= q * a[k][j];
                if (sign_of(a[i][k]) != 0) {
                    std::swap(a[k], a[i]); // remainder is strictly smaller
                    again = true;
                    break;
                }
            }
            if (again) continue;
            for (int j = k + 1; j < n; ++j) {
                if (sign_of(a[k][j]) == 0) continue;
                Int q = round_div(a[k][j], a[k][k]);
                if (sign_of(q) != 0)
                    for (int i = k; i < m; ++i) a[i][j] -= q * a[i][k];
                if (sign_of(a[k][j]) != 0) {
                    for (int i = 0; i < m; ++i) std::swap(a[i][k], a[i][j]);
                    again = true;
                    break;
                }
            }
        }
        vals.push_back(abs_of(a[k][k]));
    }
    return vals;
}

class SmithWorkspace {
public:
    SmithWorkspace(const SparseIntMatrix& m, const SNFOptions& opt)
        : rows_(m.rows), cols_(m.cols), opt_(opt), wit_(opt.want_witnesses),
          row_(m.rows), colrows_(m.cols), col_nnz_(m.cols, 0),
          row_alive_(m.rows, 1), col_alive_(m.cols, 1),
          live_rows_(m.rows), live_cols_(m.cols)
    {
        for (const auto& e : m.entries) {
            Int cur = value_at(e.row, e.col);
            put(e.row, e.col, cur + e.val);
        }
        if (wit_) {
            U_ = identity(rows_);
            V_ = identity(cols_);
        }
    }

    SNFResult run()
    {
        if (!wit_) {
            sweep_empty();
            deduplicate();
            sweep_empty();
        }
        for (;;) {
            if (!wit_ && active_fits_dense()) {
                dense_finish();
                break;
            }
            auto piv = find_pivot();
            if (!piv) break;
            auto [r, c] = eliminate(piv->first, piv->second);
            retire(r, c);
        }
        SNFResult res;
        res.rows = rows_;
        res.cols = cols_;
        if (wit_) {
            normalize_diagonal_with_ops();
            for (int k = 0; k < static_cast<int>(diag_.size()); ++k)
                diag_[k] = value_at(k, k);
            res.left = std::move(U_);
            res.right = std::move(V_);
        } else {
            normalize_factor_chain(diag_);
        }
        res.diagonal = std::move(diag_);
        return res;
    }

private:
    int rows_, cols_;
    SNFOptions opt_;
    bool wit_;
    std::vector<std::unordered_map<int, Int>> row_;
    std::vector<std::unordered_set<int>> colrows_;
    std::vector<int> col_nnz_;
    std::vector<char> row_alive_, col_alive_;
    int live_rows_ = 0, live_cols_ = 0;
    std::size_t total_entries_ = 0;
    std::size_t total_limbs_ = 0;
    std::vector<Int> diag_;
    DenseIntMatrix U_, V_;

    static DenseIntMatrix identity(int n)
    {
        DenseIntMatrix id(n, std::vector<Int>(n, Int(0)));
        for (int i = 0; i < n; ++i) id[i][i] = 1;
        return id;
    }

    Int value_at(int r, int c) const
    {
        auto it = row_[r].find(c);
        return it == row_[r].end() ? Int(0) : it->second;
    }

    const Int* find_entry(int r, int c) const
    {
        auto it = row_[r].find(c);
        return it == row_[r].end() ? nullptr : &it->second;
    }

    void put(int r, int c, Int v)
    {
        auto it = row_[r].find(c);
        if (it == row_[r].end()) {
            if (sign_of(v) == 0) return;
            if (++total_entries_ > opt_.max_entries)
                throw BudgetError("smith_normal_form: fill budget exceeded");
            total_limbs_ += detail::limbs_of(v);
            if (total_limbs_ > opt_.max_limbs)
                throw BudgetError("smith_normal_form: coefficient size budget exceeded");
            row_[r].emplace(c, std::move(v));
            colrows_[c].insert(r);
            ++col_nnz_[c];
        } else if (sign_of(v) == 0) {
            total_limbs_ -= detail::limbs_of(it->second);
            row_[r].erase(it);
            colrows_[c].erase(r);
            --col_nnz_[c];
            --total_entries_;
        } else {
            total_limbs_ += detail::limbs_of(v);
            total_limbs_ -= detail::limbs_of(it->second);
            if (total_limbs_ > opt_.max_limbs)
                throw BudgetError("smith_normal_form: coefficient size budget exceeded");
            it->second = std::move(v);
        }
    }

    // row[dst] -= q * row[src]
    void row_axpy(int dst, int src, const Int& q)
    {
        for (const auto& [c, v] : row_[src]) put(dst, c, value_at(dst, c) - q * v);
        if (wit_)
            for (int j = 0; j < rows_; ++j) U_[dst][j] -= q * U_[src][j];
    }

    // col[dst] -= q * col[src]
    void col_axpy(int dst, int src, const Int& q)
    {
        std::vector<int> rs(colrows_[src].begin(), colrows_[src].end());
        for (int r : rs) {
            const Int* v = find_entry(r, src);
            if (v) put(r, dst, value_at(r, dst) - q * (*v));
        }
        if (wit_)
            for (int i = 0; i < cols_; ++i) V_[i][dst] -= q * V_[i][src];
    }

    void row_swap(int a, int b)
    {
        if (a == b) return;
        std::vector<int> cols_a, cols_b;
        for (auto& [c, v] : row_[a]) cols_a.push_back(c);
        for (auto& [c, v] : row_[b]) cols_b.push_back(c);
        for (int c : cols_a) colrows_[c].erase(a);
        for (int c : cols_b) colrows_[c].erase(b);
        std::swap(row_[a], row_[b]);
        for (int c : cols_b) colrows_[c].insert(a);
        for (int c : cols_a) colrows_[c].insert(b);
        if (wit_) std::swap(U_[a], U_[b]);
    }

    void col_swap(int a, int b)
    {
        if (a == b) return;
        std::unordered_set<int> touched(colrows_[a]);
        touched.insert(colrows_[b].begin(), colrows_[b].end());
        for (int r : touched) {
            Int va = value_at(r, a), vb = value_at(r, b);
            put(r, a, vb);
            put(r, b, va);
        }
        if (wit_)
            for (int i = 0; i < cols_; ++i) std::swap(V_[i][a], V_[i][b]);
    }

    void row_negate(int r)
    {
        for (auto& [c, v] : row_[r]) v = -v;
        if (wit_)
            for (int j = 0; j < rows_; ++j) U_[r][j] = -U_[r][j];
    }

    // Drop exactly duplicated (or negated) rows and columns; each removal is
    // a single elementary subtraction, so invariant factors are unchanged.
    // Never used in witness mode.
    void deduplicate()
    {
        for (int pass = 0; pass < 4; ++pass) {
            bool changed = false;
            changed |= dedup_rows();
            changed |= dedup_cols();
            if (!changed) break;
        }
    }

    bool dedup_rows()
    {
        std::unordered_map<std::string, int> seen;
        bool changed = false;
        for (int r = 0; r < rows_; ++r) {
            if (!row_alive_[r] || row_[r].empty()) continue;
            std::string key = row_signature(r);
            auto [it, fresh] = seen.try_emplace(key, r);
            if (!fresh) {
                clear_row(r);
                row_alive_[r] = 0;
                --live_rows_;
                changed = true;
            }
        }
        return changed;
    }

    bool dedup_cols()
    {
        std::unordered_map<std::string, int> seen;
        bool changed = false;
        for (int c = 0; c < cols_; ++c) {
            if (!col_alive_[c] || col_nnz_[c] == 0) continue;
            std::string key = col_signature(c);
            auto [it, fresh] = seen.try_emplace(key, c);
            if (!fresh) {
                clear_col(c);
                col_alive_[c] = 0;
                --live_cols_;
                changed = true;
            }
        }
        return changed;
    }

    std::string row_signature(int r) const
    {
        std::vector<std::pair<int, const Int*>> es;
        es.reserve(row_[r].size());
        for (const auto& [c, v] : row_[r]) es.push_back({c, &v});
        std::sort(es.begin(), es.end());
        const int flip = sign_of(*es.front().second) < 0 ? -1 : 1;
        std::string key;
        for (auto& [c, v] : es) {
            key += std::to_string(c);
            key += ':';
            key += (flip < 0 ? Int(-*v) : *v).get_str();
            key += ';';
        }
        return key;
    }

    std::string col_signature(int c) const
    {
        std::vector<int> rs(colrows_[c].begin(), colrows_[c].end());
        std::sort(rs.begin(), rs.end());
        const int flip = sign_of(*find_entry(rs.front(), c)) < 0 ? -1 : 1;
        std::string key;
        for (int r : rs) {
            key += std::to_string(r);
            key += ':';
            key += (flip < 0 ? Int(-*find_entry(r, c)) : *find_entry(r, c)).get_str();
            key += ';';
        }
        return key;
    }

    void clear_row(int r)
    {
        std::vector<int> cs;
        for (auto& [c, v] : row_[r]) cs.push_back(c);
        for (int c : cs) put(r, c, Int(0));
    }

    void clear_col(int c)
    {
        std::vector<int> rs(colrows_[c].begin(), colrows_[c].end());
        for (int r : rs) put(r, c, Int(0));
    }

    void sweep_empty()
    {
        for (int r = 0; r < rows_; ++r)
            if (row_alive_[r] && row_[r].empty()) {
                row_alive_[r] = 0;
                --live_rows_;
            }
        for (int c = 0; c < cols_; ++c)
            if (col_alive_[c] && col_nnz_[c] == 0) {
                col_alive_[c] = 0;
                --live_cols_;
            }
    }

    // Best pivot by (unit value first, Markowitz fill cost, magnitude, position).
    std::optional<std::pair<int, int>> find_pivot() const
    {
        int best_r = -1, best_c = -1;
        int best_unit = 2;
        long best_cost = 0;
        Int best_abs;
        for (int r = 0; r < rows_; ++r) {
            if (!row_alive_[r] || row_[r].empty()) continue;
            const long rn = static_cast<long>(row_[r].size());
            for (const auto& [c, v] : row_[r]) {
                const int unit = mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0 ? 0 : 1;
                const long cost = (rn - 1) * (col_nnz_[c] - 1);
                bool better;
                if (best_r < 0)
                    better = true;
                else if (unit != best_unit)
                    better = unit < best_unit;
                else if (cost != best_cost)
                    better = cost < best_cost;
                else {
                    const int cmp = mpz_cmpabs(v.get_mpz_t(), best_abs.get_mpz_t());
                    better = cmp != 0 ? cmp < 0
                                      : (r != best_r ? r < best_r : c < best_c);
                }
                if (better) {
                    best_r = r;
                    best_c = c;
                    best_unit = unit;
                    best_cost = cost;
                    best_abs = abs_of(v);
                    if (best_unit == 0 && best_cost == 0) return {{best_r, best_c}};
                }
            }
        }
        if (best_r < 0) return std::nullopt;
        return {{best_r, best_c}};
    }

    // Clear the pivot's row and column with Euclidean row/column operations.
    // Remainders move the pivot to a strictly smaller value, so this ends.
    std::pair<int, int> eliminate(int r, int c)
    {
        Int v = value_at(r, c);
        for (;;) {
            bool moved = false;
            std::vector<int> rs(colrows_[c].begin(), colrows_[c].end());
            std::sort(rs.begin(), rs.end());
            for (int rr : rs) {
                if (rr == r) continue;
                const Int* a = find_entry(rr, c);
                if (!a) continue;
                Int q = round_div(*a, v);
                if (sign_of(q) != 0) row_axpy(rr, r, q);
                const Int* rem = find_entry(rr, c);
                if (rem) {
                    r = rr;
                    v = *rem;
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            std::vector<int> cs;
            for (const auto& [cc, vv] : row_[r]) cs.push_back(cc);
            std::sort(cs.begin(), cs.end());
            for (int cc : cs) {
                if (cc == c) continue;
                const Int* a = find_entry(r, cc);
                if (!a) continue;
                Int q = round_div(*a, v);
                if (sign_of(q) != 0) col_axpy(cc, c, q);
                const Int* rem = find_entry(r, cc);
                if (rem) {
                    c = cc;
                    v = *rem;
                    moved = true;
                    break;
                }
            }
            if (!moved) return {r, c};
        }
    }

    void retire(int r, int c)
    {
        const int k = static_cast<int>(diag_.size());
        if (wit_) {
            // Move the finished pivot into slot (k, k); dead indices stay < k.
            row_swap(r, k);
            col_swap(c, k);
            if (sign_of(value_at(k, k)) < 0) row_negate(k);
            diag_.push_back(value_at(k, k));
            row_alive_[k] = 0;
            col_alive_[k] = 0;
        } else {
            diag_.push_back(abs_of(value_at(r, c)));
            put(r, c, Int(0));
            row_alive_[r] = 0;
            col_alive_[c] = 0;
        }
        --live_rows_;
        --live_cols_;
    }

    bool active_fits_dense() const
    {
        return live_rows_ <= opt_.dense_threshold && live_cols_ <= opt_.dense_threshold;
    }

    void dense_finish()
    {
        std::vector<int> rmap, cmap;
        for (int r = 0; r < rows_; ++r)
            if (row_alive_[r] && !row_[r].empty()) rmap.push_back(r);
        for (int c = 0; c < cols_; ++c)
            if (col_alive_[c] && col_nnz_[c] > 0) cmap.push_back(c);
        if (rmap.empty() || cmap.empty()) return;
        std::unordered_map<int, int> cidx;
        for (std::size_t j = 0; j < cmap.size(); ++j) cidx[cmap[j]] = static_cast<int>(j);
        DenseIntMatrix a(rmap.size(), std::vector<Int>(cmap.size(), Int(0)));
        for (std::size_t i = 0; i < rmap.size(); ++i)
            for (const auto& [c, v] : row_[rmap[i]]) a[i][cidx[c]] = v;
        for (const auto& d : dense_diagonalize(a, opt_.max_limbs)) diag_.push_back(d);
    }

    // Witness mode only: enforce d1 | d2 | ... by 2x2 block fixes realized as
    // actual row/column operations, keeping U * M * V = S true.
    void normalize_diagonal_with_ops()
    {
        const int k = static_cast<int>(diag_.size());
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i + 1 < k; ++i) {
                const int j = i + 1;
                Int a = value_at(i, i), b = value_at(j, j);
                if (divides(a, b)) continue;
                col_axpy(i, j, Int(-1)); // block becomes [[a,0],[b,b]]
                auto [pr, pc] = eliminate(i, i);
                row_swap(pr, i);
                col_swap(pc, i);
                if (sign_of(value_at(i, i)) < 0) row_negate(i);
                if (sign_of(value_at(j, j)) < 0) row_negate(j);
                changed = true;
            }
        }
    }
};

} // namespace detail

inline SNFResult smith_normal_form(const SparseIntMatrix& m, SNFOptions opt = {})
{
    detail::SmithWorkspace ws(m, opt);
    return ws.run();
}

inline int rank_of(const SparseIntMatrix& m, SNFOptions opt = {})
{
    opt.want_witnesses = false;
    return smith_normal_form(m, opt).rank();
}

} // namespace disthom
