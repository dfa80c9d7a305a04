#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "homology.hpp"
#include "table.hpp"

namespace disthom {

// Table relabeled along a bijection: t'(x, y) = p(t(p^-1(x), p^-1(y))).
inline OperationTable relabel_table(const OperationTable& t, const std::vector<int>& perm)
{
    const int n = t.size();
    std::vector<int> inv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
    std::vector<int> entries(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            entries[static_cast<std::size_t>(x) * n + y] = perm[static_cast<std::size_t>(
                t.op(inv[static_cast<std::size_t>(x)], inv[static_cast<std::size_t>(y)]))];
    return OperationTable(n, std::move(entries));
}

// Lexicographically minimal relabeling; isomorphic tables share this form.
// Full search over all |X|! relabelings, enforced small.
inline OperationTable canonical_table(const OperationTable& t)
{
    const int n = t.size();
    if (n > 5) throw BudgetError("canonical form search is enforced for size <= 5");
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::vector<int> best = t.raw();
    do {
        const std::vector<int> cand = relabel_table(t, perm).raw();
        if (cand < best) best = cand;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return OperationTable(n, std::move(best));
}

namespace detail {

// Backtracking over table cells with partially-assigned distributivity
// checks: a triple prunes as soon as every lookup it needs is filled in.
inline void enumerate_tables(int n, bool idempotent_only,
                             const std::function<void(const OperationTable&)>& emit)
{
    std::vector<int> t(static_cast<std::size_t>(n) * n, -1);
    auto at = [&](int x, int y) { return t[static_cast<std::size_t>(x) * n + y]; };
    if (idempotent_only)
        for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i) * n + i] = i;

    std::vector<int> cells;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (at(x, y) < 0) cells.push_back(x * n + y);

    auto consistent = [&]() {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const int xy = at(x, y);
                for (int z = 0; z < n; ++z) {
                    const int xz = at(x, z), yz = at(y, z);
                    if (xy < 0 || xz < 0 || yz < 0) continue;
                    const int lhs = at(xy, z);
                    const int rhs_v = at(xz, yz);
                    if (lhs < 0 || rhs_v < 0) continue;
                    if (lhs != rhs_v) return false;
                }
            }
        return true;
    };

    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == cells.size()) {
            emit(OperationTable(n, t));
            return;
        }
        for (int v = 0; v < n; ++v) {
            t[static_cast<std::size_t>(cells[k])] = v;
            if (consistent()) self(self, k + 1);
        }
        t[static_cast<std::size_t>(cells[k])] = -1;
    };
    rec(rec, 0);
}

} // namespace detail

// All spindle tables of the given size, optionally one canonical
// representative per isomorphism class.
inline std::vector<OperationTable> enumerate_spindles(int size, bool up_to_iso)
{
    if (size < 1) throw StructuralError("enumerate: size must be >= 1");
    if (size > 4) throw BudgetError("exhaustive spindle enumeration is enforced for size <= 4");
    std::vector<OperationTable> out;
    detail::enumerate_tables(size, true, [&](const OperationTable& t) { out.push_back(t); });
    if (!up_to_iso) return out;
    std::set<std::vector<int>> seen;
    std::vector<OperationTable> reps;
    for (const auto& t : out) {
        OperationTable c = canonical_table(t);
        if (seen.insert(c.raw()).second) reps.push_back(std::move(c));
    }
    return reps;
}

// Smoke-mode shelf enumeration (non-idempotent tables included).
inline std::vector<OperationTable> enumerate_shelves(int size)
{
    if (size < 1) throw StructuralError("enumerate: size must be >= 1");
    if (size > 3) throw BudgetError("exhaustive shelf enumeration is enforced for size <= 3");
    std::vector<OperationTable> out;
    detail::enumerate_tables(size, false, [&](const OperationTable& t) { out.push_back(t); });
    return out;
}

// One growth-conjecture sweep over a single table. A relation "at degree n"
// compares degree n+1 against lower degrees, so it is tested when every
// group it mentions was actually computed; budget-starved degrees are left
// out of the tested lists rather than passed.
struct ConjectureReport {
    int carrier = 0;
    int n_max = 0;
    bool is_spindle = false;
    std::string digest;
    std::map<int, FGAbelianGroup> full;
    std::map<int, FGAbelianGroup> normalized;
    std::vector<int> untested_degrees; // degrees whose homology was unavailable

    std::vector<int> rgc_tested, rgc_failed;           // rk H_(n+1) = |X| rk H_n
    std::vector<int> nrgc_tested, nrgc_failed;         // rk HN_(n+1) = (|X|-1) rk HN_n
    std::vector<int> gc_tested, gc_rank_failed, gc_group_failed;
    std::vector<int> hn_growth_tested, hn_growth_failed; // HN_(n+1) = HN_n^(|X|-1)
    std::vector<int> xpow_tested, xpow_failed;           // H_(n+1) = H_n^(|X|)

    bool rgc_pass() const { return rgc_failed.empty(); }
    bool nrgc_pass() const { return nrgc_failed.empty(); }
    bool gc_pass() const { return gc_rank_failed.empty() && gc_group_failed.empty(); }
    bool torsion_grows_by_carrier() const { return xpow_failed.empty(); }
};

inline ConjectureReport test_growth_conjectures(const Shelf& shelf, int n_max,
                                                const HomologyOptions& opt = {})
{
    ConjectureReport rep;
    rep.carrier = shelf.size();
    rep.n_max = n_max;
    rep.digest = shelf.table().digest();
    bool spindle = true;
    for (int x = 0; x < shelf.size(); ++x)
        if (shelf.op(x, x) != x) spindle = false;
    rep.is_spindle = spindle;

    HomologyResult h = compute_homology(shelf, Variant::full(), 0, n_max, opt);
    for (const auto& [d, r] : h.by_degree) {
        if (r.group)
            rep.full[d] = *r.group;
        else
            rep.untested_degrees.push_back(d);
    }
    if (spindle) {
        HomologyResult hn = compute_homology(shelf, Variant::normalized(), 0, n_max, opt);
        for (const auto& [d, r] : hn.by_degree)
            if (r.group) rep.normalized[d] = *r.group;
    }

    const long X = shelf.size();
    // A one-element carrier is outside the growth statements: |X| - 1 = 0
    // powers would force H_(n+1) = H_(n-1), which already fails for the
    // contractible point. Report it as vacuously passing, nothing tested.
    if (X == 1) return rep;
    auto have = [&](const std::map<int, FGAbelianGroup>& m, int d) { return m.count(d) != 0; };

    for (int n = 1; n + 1 <= n_max; ++n) {
        if (n < X - 2) continue;
        if (!have(rep.full, n) || !have(rep.full, n + 1)) continue;
        rep.rgc_tested.push_back(n);
        if (rep.full[n + 1].free_rank != X * rep.full[n].free_rank) rep.rgc_failed.push_back(n);
        rep.xpow_tested.push_back(n);
        if (!group_iso_eq(rep.full[n + 1], group_power(rep.full[n], X)))
            rep.xpow_failed.push_back(n);
        if (n >= 1 && have(rep.full, n - 1)) {
            rep.gc_tested.push_back(n);
            const FGAbelianGroup rhs = group_directsum(group_power(rep.full[n], X - 1),
                                                       group_power(rep.full[n - 1], X));
            if (rep.full[n + 1].free_rank != rhs.free_rank)
                rep.gc_rank_failed.push_back(n);
            else if (!group_iso_eq(rep.full[n + 1], rhs))
                rep.gc_group_failed.push_back(n);
        }
    }
    if (spindle)
        for (int n = 1; n + 1 <= n_max; ++n) {
            if (n < X - 1) continue;
            if (!have(rep.normalized, n) || !have(rep.normalized, n + 1)) continue;
            rep.nrgc_tested.push_back(n);
            if (rep.normalized[n + 1].free_rank != (X - 1) * rep.normalized[n].free_rank)
                rep.nrgc_failed.push_back(n);
            rep.hn_growth_tested.push_back(n);
            if (!group_iso_eq(rep.normalized[n + 1], group_power(rep.normalized[n], X - 1)))
                rep.hn_growth_failed.push_back(n);
        }
    return rep;
}

} // namespace disthom
