#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abelian_group.hpp"
#include "chain.hpp"
#include "errors.hpp"
#include "fspindle.hpp"
#include "smith.hpp"
#include "sparse_matrix.hpp"
#include "table.hpp"

namespace disthom {

struct HomologyOptions {
    ChainBudget chain;
    SNFOptions snf;
};

// H = ker d_n / im d_(n+1). The free rank is nullity(d_n) - rank(d_(n+1));
// the torsion equals the torsion of the cokernel of d_(n+1) because every
// torsion class of Z^m / im d_(n+1) already lies in ker d_n.
inline FGAbelianGroup homology_from_boundaries(const SparseIntMatrix& d_n,
                                               const SparseIntMatrix& d_np1,
                                               SNFOptions snf = {})
{
    if (d_n.cols != d_np1.rows)
        throw StructuralError("homology_from_boundaries: cols(d_n) != rows(d_np1)");
    if (!multiply(d_n, d_np1).is_zero())
        throw InternalError("homology_from_boundaries: d_n * d_np1 != 0");
    snf.want_witnesses = false;
    const int r_lo = smith_normal_form(d_n, snf).rank();
    SNFResult hi = smith_normal_form(d_np1, snf);
    const long free = static_cast<long>(d_n.cols) - r_lo - hi.rank();
    if (free < 0) throw InternalError("homology_from_boundaries: negative free rank");
    return FGAbelianGroup(free, hi.torsion());
}

// Per-degree outcome of a homology request. A degree whose matrices blew the
// budget carries the error text instead of a group; lower degrees are kept.
struct DegreeResult {
    std::optional<FGAbelianGroup> group;
    std::string error;
};

struct HomologyResult {
    Variant variant;
    int n_lo = 0;
    int n_hi = 0;
    std::map<int, DegreeResult> by_degree;

    bool complete() const
    {
        for (const auto& [d, r] : by_degree)
            if (!r.group) return false;
        return true;
    }

    const FGAbelianGroup& at(int degree) const
    {
        auto it = by_degree.find(degree);
        if (it == by_degree.end() || !it->second.group)
            throw BudgetError("homology at degree " + std::to_string(degree) +
                              " is unavailable: " +
                              (it == by_degree.end() ? "not requested" : it->second.error));
        return *it->second.group;
    }
};

inline HomologyResult compute_homology(const Shelf& shelf, const Variant& variant, int n_lo,
                                       int n_hi, const HomologyOptions& opt = {})
{
    if (n_lo < 0 || n_lo > n_hi) throw StructuralError("bad degree range");
    detail::check_variant(shelf, variant);

    HomologyResult res;
    res.variant = variant;
    res.n_lo = n_lo;
    res.n_hi = n_hi;

    // Built lazily one degree above the requested top; a budget failure marks
    // the affected degree and everything above it. Deques keep references to
    // already-built entries stable while later degrees are appended.
    std::deque<ChainBasis> bases;      // degrees n_lo-1 ...
    std::deque<SparseIntMatrix> bds;   // d_(n_lo) ...
    std::deque<SNFResult> snfs;
    auto basis_for = [&](int d) -> const ChainBasis& {
        while (static_cast<int>(bases.size()) <= d - (n_lo - 1))
            bases.push_back(chain_basis(shelf, n_lo - 1 + static_cast<int>(bases.size()),
                                        variant, opt.chain));
        return bases[static_cast<std::size_t>(d - (n_lo - 1))];
    };
    auto boundary_for = [&](int d) -> const SparseIntMatrix& {
        while (static_cast<int>(bds.size()) <= d - n_lo) {
            const int deg = n_lo + static_cast<int>(bds.size());
            const ChainBasis& cod = basis_for(deg - 1);
            const ChainBasis& dom = basis_for(deg);
            bds.push_back(boundary_matrix_between(shelf, variant, dom, cod, opt.chain));
            if (bds.size() >= 2) {
                const auto& lower = bds[bds.size() - 2];
                if (!multiply(lower, bds.back()).is_zero())
                    throw InternalError("d∘d != 0 at degree " + std::to_string(deg) +
                                        " in the " + variant.name() + " complex");
            }
        }
        return bds[static_cast<std::size_t>(d - n_lo)];
    };
    auto snf_for = [&](int d) -> const SNFResult& {
        while (static_cast<int>(snfs.size()) <= d - n_lo) {
            SNFOptions s = opt.snf;
            s.want_witnesses = false;
            snfs.push_back(smith_normal_form(boundary_for(n_lo + static_cast<int>(snfs.size())), s));
        }
        return snfs[static_cast<std::size_t>(d - n_lo)];
    };

    for (int n = n_lo; n <= n_hi; ++n) {
        try {
            const int dim_n = basis_for(n).dim();
            const SNFResult& lo = snf_for(n);
            const SNFResult& hi = snf_for(n + 1);
            const long free = static_cast<long>(dim_n) - lo.rank() - hi.rank();
            if (free < 0) throw InternalError("negative free rank in homology");
            res.by_degree[n] = {FGAbelianGroup(free, hi.torsion()), ""};
        } catch (const BudgetError& e) {
            for (int m = n; m <= n_hi; ++m) res.by_degree[m] = {std::nullopt, e.what()};
            break;
        }
    }
    return res;
}

inline FGAbelianGroup homology_at(const Shelf& shelf, const Variant& v, int degree,
                                  const HomologyOptions& opt = {})
{
    return compute_homology(shelf, v, degree, degree, opt).at(degree);
}

// --- closed-form evaluators -------------------------------------------------
//
// These take only orbit-graph summaries, never operation tables, so that the
// formula side of every crosscheck stays independent of the matrix side.

namespace detail {

inline long checked_pow(long base, int exp)
{
    long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > 100000000L / base)
            throw BudgetError("closed form: direct-sum power too large");
        r *= base;
    }
    return r;
}

inline void require_finite_ell(const OrbitGraph& g)
{
    if (g.ell < 1)
        throw InternalError("ell = 0 cannot occur for a finite carrier");
}

} // namespace detail

inline FGAbelianGroup closed_form_H1_fspindle(const OrbitGraph& g)
{
    detail::require_finite_ell(g);
    const long m = static_cast<long>(g.orbit_id.size());
    const long orb = g.orbit_count;
    const long free = m * (orb - 1) + 2 * orb;
    return group_directsum(FGAbelianGroup::free(free),
                           FGAbelianGroup::cyclic_power(Int(g.ell), g.init_count()));
}

inline FGAbelianGroup closed_form_HN_fspindle(const OrbitGraph& g, int n)
{
    detail::require_finite_ell(g);
    const long m = static_cast<long>(g.orbit_id.size());
    const long X = m + 1;
    const long orb = g.orbit_count;
    if (n < 0) throw StructuralError("negative degree");
    if (n == 0) return FGAbelianGroup::free(orb + 1); // Z plus reduced Z^orb
    if (n == 1) return closed_form_H1_fspindle(g);
    FGAbelianGroup base = group_directsum(
        FGAbelianGroup::free((orb - 1) * X * X + X),
        FGAbelianGroup::cyclic_power(Int(g.ell), g.init_count() * X));
    return group_power(base, detail::checked_pow(X - 1, n - 2));
}

inline FGAbelianGroup closed_form_full_fspindle(const OrbitGraph& g, int n)
{
    detail::require_finite_ell(g);
    const long m = static_cast<long>(g.orbit_id.size());
    const long X = m + 1;
    const long orb = g.orbit_count;
    if (n < 0) throw StructuralError("negative degree");
    if (n == 0) return FGAbelianGroup::free(orb + 1);
    FGAbelianGroup base = group_directsum(
        FGAbelianGroup::free(orb * (X + 1) - (X - 1)),
        FGAbelianGroup::cyclic_power(Int(g.ell), g.init_count()));
    return group_power(base, detail::checked_pow(X, n - 1));
}

inline FGAbelianGroup closed_form_Hb_fspindle(const OrbitGraph& g, int n)
{
    detail::require_finite_ell(g);
    const long m = static_cast<long>(g.orbit_id.size());
    const long X = m + 1;
    const long orb = g.orbit_count;
    if (n < 0) throw StructuralError("negative degree");
    if (n == 0) return FGAbelianGroup::free(1);
    if (n == 1) return FGAbelianGroup::free(orb);
    FGAbelianGroup base = group_directsum(
        FGAbelianGroup::free(orb * X - X + 1),
        FGAbelianGroup::cyclic_power(Int(g.ell), g.init_count()));
    return group_power(base, detail::checked_pow(X - 1, n - 2));
}

// H1 of a block spindle with a designated one-element block {b}: the free
// part F collects one generator per (orbit of X_i, element of X_j) over
// ordered pairs of distinct blocks other than {b}, and each X_i u {b} is an
// f_i-spindle contributing its own H1. ({b} itself stays out of the F sum:
// pairs that touch b live inside some X_i u {b} and are counted there.)
inline FGAbelianGroup closed_form_H1_block(const BlockSpindleSpec& spec)
{
    auto sb = spec.singleton_block();
    if (!sb)
        throw StructuralError("block-spindle H1 formula requires a one-element block");
    std::vector<OrbitGraph> graphs;
    std::vector<long> sizes;
    for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
        if (i == *sb) continue;
        graphs.push_back(analyze_orbit_graph(FSpindleSpec(spec.blocks[i].f)));
        sizes.push_back(spec.blocks[i].size);
    }
    long f_rank = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i)
        for (std::size_t j = 0; j < graphs.size(); ++j)
            if (i != j) f_rank += graphs[i].orbit_count * sizes[j];
    FGAbelianGroup out = FGAbelianGroup::free(f_rank);
    for (const auto& g : graphs) out = group_directsum(out, closed_form_H1_fspindle(g));
    return out;
}

// --- structural identities ----------------------------------------------------

// H_n = HN_n + HD_n, all three sides computed independently by SNF.
inline bool verify_splitting(const Spindle& sp, int n, const HomologyOptions& opt = {})
{
    const FGAbelianGroup h = homology_at(sp.shelf(), Variant::full(), n, opt);
    const FGAbelianGroup hn = homology_at(sp.shelf(), Variant::normalized(), n, opt);
    const FGAbelianGroup hd = homology_at(sp.shelf(), Variant::degenerate(), n, opt);
    return group_iso_eq(h, group_directsum(hn, hd));
}

// The degenerate complex is a sum of shifted augmented complexes tensored
// with free modules: CD_n = sum over p+q = n-2 of C~_p tensor CN_q, with the
// differential on the first factor only. Checks both the dimension identity
// and the homology consequence HD_n = sum of H~_p ^ dim(CN_q).
inline bool verify_degenerate_decomposition(const Spindle& sp, int n,
                                            const HomologyOptions& opt = {})
{
    const int X = sp.size();
    auto cn_dim = [&](int q) -> long {
        long r = X;
        for (int i = 0; i < q; ++i) r *= X - 1;
        return r;
    };
    auto full_dim = [&](int p) -> long {
        if (p == -1) return 1;
        long r = 1;
        for (int i = 0; i <= p; ++i) r *= X;
        return r;
    };

    const long cd = chain_basis(sp.shelf(), n, Variant::degenerate(), opt.chain).dim();
    long expect = 0;
    for (int p = -1; p <= n - 2; ++p) expect += full_dim(p) * cn_dim(n - 2 - p);
    if (cd != expect) return false;

    FGAbelianGroup rhs;
    for (int p = 0; p <= n - 2; ++p) { // H~_(-1) = 0 for a nonempty carrier
        const FGAbelianGroup ht = homology_at(sp.shelf(), Variant::augmented(), p, opt);
        rhs = group_directsum(rhs, group_power(ht, cn_dim(n - 2 - p)));
    }
    const FGAbelianGroup hd = homology_at(sp.shelf(), Variant::degenerate(), n, opt);
    return group_iso_eq(hd, rhs);
}

// --- relative homology --------------------------------------------------------

namespace detail {

// Rank of the image of CN_n(Y) inside HN_n(X): rank([d_(n+1) | inclusion
// columns]) - rank(d_(n+1)). The inclusion columns are unit vectors because
// Y-tuples are themselves basis tuples of CN_n(X).
struct QuotientByImage {
    long image_rank = 0;
    FGAbelianGroup quotient; // HN_n(X) / im i_n
};

inline QuotientByImage quotient_by_subcomplex_image(const Shelf& shelf,
                                                    const std::vector<int>& y, int n,
                                                    const HomologyOptions& opt)
{
    const Variant cn = Variant::normalized();
    ChainBasis b_nm1 = chain_basis(shelf, n - 1, cn, opt.chain);
    ChainBasis b_n = chain_basis(shelf, n, cn, opt.chain);
    ChainBasis b_np1 = chain_basis(shelf, n + 1, cn, opt.chain);
    SparseIntMatrix d_n = boundary_matrix_between(shelf, cn, b_n, b_nm1, opt.chain);
    SparseIntMatrix d_np1 = boundary_matrix_between(shelf, cn, b_np1, b_n, opt.chain);

    SparseIntMatrix aug(b_n.dim(), 0);
    int extra = 0;
    for (int i = 0; i < b_n.dim(); ++i)
        if (in_subset(b_n.tuples[static_cast<std::size_t>(i)], y)) ++extra;
    aug.cols = d_np1.cols + extra;
    aug.entries = d_np1.entries;
    int next = d_np1.cols;
    for (int i = 0; i < b_n.dim(); ++i)
        if (in_subset(b_n.tuples[static_cast<std::size_t>(i)], y)) aug.add(i, next++, Int(1));
    aug.canonicalize();

    SNFOptions s = opt.snf;
    s.want_witnesses = false;
    const int rank_dnp1 = smith_normal_form(d_np1, s).rank();
    SNFResult aug_snf = smith_normal_form(aug, s);
    const int rank_dn = smith_normal_form(d_n, s).rank();

    QuotientByImage out;
    out.image_rank = aug_snf.rank() - rank_dnp1;
    const long free = static_cast<long>(b_n.dim()) - rank_dn - aug_snf.rank();
    if (free < 0) throw InternalError("negative free rank in quotient by image");
    out.quotient = FGAbelianGroup(free, aug_snf.torsion());
    return out;
}

} // namespace detail

// H_n(X, Y) for a subspindle Y, via SNF on the quotient complex. For an
// f-spindle with Y = X0 the two structure statements about the normalized
// relative complex are asserted as well: the dimension identity against
// Cb tensor C~N(X0) and the homology consequence built from Hb alone (the
// differential lives on the b-ending factor; C~N(X0) has zero differential).
inline FGAbelianGroup relative_homology(const Spindle& sp, const std::vector<int>& subset,
                                        int n, const HomologyOptions& opt = {})
{
    Variant rel = Variant::relative(subset);
    FGAbelianGroup out = homology_at(sp.shelf(), rel, n, opt);

    auto fsp = extract_f_spindle(sp.table());
    bool y_is_x0 = fsp && static_cast<int>(rel.subset.size()) == sp.size() - 1;
    if (y_is_x0)
        for (std::size_t i = 0; i < rel.subset.size(); ++i)
            if (rel.subset[i] != static_cast<int>(i) + 1) y_is_x0 = false;
    if (y_is_x0) {
        const int X = sp.size();
        const int m = X - 1;

        // dim CN_(n+1)(X, X0) = sum over p+q = n of dim Cb_p * dim C~N_q(X0)
        auto cb_dim = [&](int p) -> long {
            long r = 1;
            for (int i = 0; i < p; ++i) r *= X - 1;
            return r;
        };
        auto cnt_x0 = [&](int q) -> long {
            if (q == -1) return 1;
            long r = m;
            for (int i = 0; i < q; ++i) r *= m - 1;
            return r;
        };
        const long lhs =
            chain_basis(sp.shelf(), n + 1, Variant::normalized_relative(rel.subset), opt.chain)
                .dim();
        long rhs = 0;
        for (int q = -1; q <= n; ++q) rhs += cb_dim(n - q) * cnt_x0(q);
        if (lhs != rhs)
            throw InternalError("relative decomposition: dimension identity fails");

        // HN_(n+1)(X, X0) = sum over p+q = n of Hb_p ^ dim C~N_q(X0)
        const FGAbelianGroup hn_rel = homology_at(
            sp.shelf(), Variant::normalized_relative(rel.subset), n + 1, opt);
        FGAbelianGroup expect;
        for (int q = -1; q <= n; ++q) {
            const FGAbelianGroup hb =
                homology_at(sp.shelf(), Variant::b_ending(0), n - q, opt);
            expect = group_directsum(expect, group_power(hb, cnt_x0(q)));
        }
        if (!group_iso_eq(hn_rel, expect))
            throw InternalError("relative decomposition: homology identity fails");
    }
    return out;
}

// Rank-level long-exact-sequence bookkeeping for an f-spindle and Y = X0:
//   HN_n(X, X0) = ker i_(n-1) + HN_n(X)/im i_n
// with i induced by the inclusion CN(X0) -> CN(X) and HN(X0) = CN(X0).
inline bool relative_les_consistency(const Spindle& sp, int n, const HomologyOptions& opt = {})
{
    auto fsp = extract_f_spindle(sp.table());
    if (!fsp) throw StructuralError("LES bookkeeping is defined for f-spindles");
    std::vector<int> x0;
    for (int e = 1; e < sp.size(); ++e) x0.push_back(e);
    const int m = sp.size() - 1;

    auto cn_x0_dim = [&](int q) -> long {
        if (q < 0) return 0;
        long r = m;
        for (int i = 0; i < q; ++i) r *= m - 1;
        return r;
    };

    const FGAbelianGroup rel =
        homology_at(sp.shelf(), Variant::normalized_relative(x0), n, opt);
    auto qn = detail::quotient_by_subcomplex_image(sp.shelf(), x0, n, opt);
    long ker_rank = 0;
    if (n >= 1) {
        auto qn1 = detail::quotient_by_subcomplex_image(sp.shelf(), x0, n - 1, opt);
        ker_rank = cn_x0_dim(n - 1) - qn1.image_rank;
    }
    const FGAbelianGroup expect =
        group_directsum(FGAbelianGroup::free(ker_rank), qn.quotient);
    return group_iso_eq(rel, expect);
}

} // namespace disthom
