#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "sparse_matrix.hpp"
#include "table.hpp"

namespace disthom {

// A degree-n basis element is an (n+1)-tuple of element indices.
using Tuple = std::vector<std::uint8_t>;

struct TupleHash {
    std::size_t operator()(const Tuple& t) const
    {
        std::size_t h = 1469598103934665603ull;
        for (auto v : t) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

inline bool has_adjacent_repeat(const Tuple& t)
{
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] == t[i + 1]) return true;
    return false;
}

inline std::string tuple_to_string(const Tuple& t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(static_cast<int>(t[i]));
    }
    return s + ")";
}

// i-th face: d^0 drops the head; d^i for i >= 1 acts on every earlier entry
// by |> with the i-th entry and then removes it.
inline Tuple face(const Shelf& s, const Tuple& t, int i)
{
    const int n = static_cast<int>(t.size()) - 1;
    if (i < 0 || i > n) throw StructuralError("face index out of range");
    Tuple r;
    r.reserve(t.size() - 1);
    if (i == 0) {
        r.assign(t.begin() + 1, t.end());
        return r;
    }
    const int y = t[i];
    for (int j = 0; j < i; ++j) r.push_back(static_cast<std::uint8_t>(s.op(t[j], y)));
    for (int j = i + 1; j <= n; ++j) r.push_back(t[j]);
    return r;
}

// Formal integer combination of tuples; the zero chain stores nothing.
using Chain = std::map<Tuple, Int>;

inline void chain_add(Chain& c, const Tuple& t, const Int& coeff)
{
    auto it = c.find(t);
    if (it == c.end()) {
        if (sign_of(coeff) != 0) c.emplace(t, coeff);
    } else {
        it->second += coeff;
        if (sign_of(it->second) == 0) c.erase(it);
    }
}

// Full-complex differential of a single tuple (degree >= 1).
inline Chain boundary_chain(const Shelf& s, const Tuple& t)
{
    Chain out;
    const int n = static_cast<int>(t.size()) - 1;
    for (int i = 0; i <= n; ++i) chain_add(out, face(s, t, i), Int(i % 2 == 0 ? 1 : -1));
    return out;
}

// --- complex variants -------------------------------------------------------

struct Variant {
    enum class Kind {
        Full,
        Augmented,
        Reduced,            // quotient by the single-basepoint subcomplex
        Normalized,         // quotient by tuples with an adjacent repeat
        Degenerate,         // subcomplex of tuples with an adjacent repeat
        BEnding,            // normalized tuples ending with the basepoint
        Relative,           // quotient by a subspindle Y (full complex)
        NormalizedRelative, // quotient of the normalized complex by CN(Y)
    };

    Kind kind = Kind::Full;
    int basepoint = 0;       // Reduced / BEnding
    std::vector<int> subset; // Relative*: sorted element set Y

    static Variant full() { return {Kind::Full, 0, {}}; }
    static Variant augmented() { return {Kind::Augmented, 0, {}}; }
    static Variant reduced(int b) { return {Kind::Reduced, b, {}}; }
    static Variant normalized() { return {Kind::Normalized, 0, {}}; }
    static Variant degenerate() { return {Kind::Degenerate, 0, {}}; }
    static Variant b_ending(int b) { return {Kind::BEnding, b, {}}; }

    static Variant relative(std::vector<int> y)
    {
        std::sort(y.begin(), y.end());
        y.erase(std::unique(y.begin(), y.end()), y.end());
        return {Kind::Relative, 0, std::move(y)};
    }

    static Variant normalized_relative(std::vector<int> y)
    {
        Variant v = relative(std::move(y));
        v.kind = Kind::NormalizedRelative;
        return v;
    }

    bool needs_spindle() const
    {
        return kind == Kind::Normalized || kind == Kind::Degenerate ||
               kind == Kind::BEnding || kind == Kind::NormalizedRelative;
    }

    std::string name() const
    {
        switch (kind) {
        case Kind::Full: return "full";
        case Kind::Augmented: return "augmented";
        case Kind::Reduced: return "reduced";
        case Kind::Normalized: return "normalized";
        case Kind::Degenerate: return "degenerate";
        case Kind::BEnding: return "bending";
        case Kind::Relative: return "relative";
        case Kind::NormalizedRelative: return "normalized-relative";
        }
        return "?";
    }
};

// Resource gate for basis and matrix construction; tuple counts grow as
// |X|^(n+1), so both a degree cap and an explicit size estimate are enforced
// before anything is allocated.
struct ChainBudget {
    int degree_cap = 6;
    std::size_t max_tuples = std::size_t(1) << 22;
    std::size_t max_matrix_entries = std::size_t(16) << 20;
};

namespace detail {

inline bool in_subset(const Tuple& t, const std::vector<int>& y)
{
    for (auto v : t)
        if (!std::binary_search(y.begin(), y.end(), static_cast<int>(v))) return false;
    return true;
}

inline void check_variant(const Shelf& shelf, const Variant& v)
{
    const int n = shelf.size();
    if (v.needs_spindle())
        for (int x = 0; x < n; ++x)
            if (shelf.op(x, x) != x)
                throw StructuralError(v.name() +
                                      " complex requires a spindle (idempotency fails)");
    if (v.kind == Variant::Kind::Reduced || v.kind == Variant::Kind::BEnding) {
        if (v.basepoint < 0 || v.basepoint >= n)
            throw StructuralError("basepoint out of range");
        if (shelf.op(v.basepoint, v.basepoint) != v.basepoint)
            throw StructuralError("basepoint is not idempotent; {b} is not a subcomplex");
    }
    if (v.kind == Variant::Kind::Relative || v.kind == Variant::Kind::NormalizedRelative) {
        if (v.subset.empty()) throw StructuralError("relative complex: empty subset");
        for (int e : v.subset)
            if (e < 0 || e >= n) throw StructuralError("relative complex: element out of range");
        for (int a : v.subset)
            for (int b : v.subset)
                if (!std::binary_search(v.subset.begin(), v.subset.end(), shelf.op(a, b)))
                    throw StructuralError("relative complex: subset is not closed under the operation");
    }
}

// Cardinality of the degree-n basis, computed without enumeration.
inline double basis_count_estimate(const Variant& v, int carrier, int n)
{
    auto powd = [](double b, int e) {
        double r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    };
    const double full = powd(carrier, n + 1);
    const double norm = carrier * powd(carrier - 1, n);
    switch (v.kind) {
    case Variant::Kind::Full:
    case Variant::Kind::Augmented: return full;
    case Variant::Kind::Reduced: return full - 1;
    case Variant::Kind::Normalized: return norm;
    case Variant::Kind::Degenerate: return full - norm;
    case Variant::Kind::BEnding: return powd(carrier - 1, n);
    case Variant::Kind::Relative: {
        const double sub = powd(static_cast<double>(v.subset.size()), n + 1);
        return full - sub;
    }
    case Variant::Kind::NormalizedRelative: {
        const double k = static_cast<double>(v.subset.size());
        return norm - k * powd(k - 1, n);
    }
    }
    return full;
}

} // namespace detail

// Ordered basis of one degree of one variant, with tuple -> position lookup.
struct ChainBasis {
    int degree = 0;
    std::vector<Tuple> tuples; // lexicographically sorted, no duplicates
    std::unordered_map<Tuple, int, TupleHash> index;
    bool formal_unit = false; // degree -1 generator of the augmented complex

    int dim() const { return formal_unit ? 1 : static_cast<int>(tuples.size()); }

    int position(const Tuple& t) const
    {
        auto it = index.find(t);
        if (it == index.end()) throw InternalError("tuple missing from basis");
        return it->second;
    }

    void finalize()
    {
        index.reserve(tuples.size());
        for (std::size_t i = 0; i < tuples.size(); ++i)
            index.emplace(tuples[i], static_cast<int>(i));
    }
};

inline ChainBasis chain_basis(const Shelf& shelf, int degree, const Variant& v,
                              const ChainBudget& budget = {})
{
    detail::check_variant(shelf, v);
    ChainBasis basis;
    basis.degree = degree;
    if (degree < -1) throw StructuralError("degree below -1");
    if (degree == -1) {
        basis.formal_unit = v.kind == Variant::Kind::Augmented;
        return basis;
    }
    if (degree > budget.degree_cap)
        throw BudgetError("degree " + std::to_string(degree) + " exceeds the degree cap " +
                          std::to_string(budget.degree_cap));
    const double est = detail::basis_count_estimate(v, shelf.size(), degree);
    if (est > static_cast<double>(budget.max_tuples))
        throw BudgetError("degree " + std::to_string(degree) + " basis of ~" +
                          std::to_string(static_cast<double>(est)) +
                          " tuples exceeds the tuple budget");

    const int n = shelf.size();
    const bool no_repeats = v.kind == Variant::Kind::Normalized ||
                            v.kind == Variant::Kind::BEnding ||
                            v.kind == Variant::Kind::NormalizedRelative;

    Tuple cur(static_cast<std::size_t>(degree) + 1);
    auto keep = [&](const Tuple& t) {
        switch (v.kind) {
        case Variant::Kind::Full:
        case Variant::Kind::Augmented:
        case Variant::Kind::Normalized: return true;
        case Variant::Kind::Degenerate: return has_adjacent_repeat(t);
        case Variant::Kind::BEnding: return t.back() == v.basepoint;
        case Variant::Kind::Reduced: {
            for (auto e : t)
                if (e != v.basepoint) return true;
            return false;
        }
        case Variant::Kind::Relative:
        case Variant::Kind::NormalizedRelative: return !detail::in_subset(t, v.subset);
        }
        return true;
    };
    // Depth-first in lexicographic order; the adjacent-repeat constraint is
    // pruned at extension time for the normalized family.
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == static_cast<int>(cur.size())) {
            if (keep(cur)) basis.tuples.push_back(cur);
            return;
        }
        for (int e = 0; e < n; ++e) {
            if (no_repeats && pos > 0 && cur[pos - 1] == e) continue;
            cur[pos] = static_cast<std::uint8_t>(e);
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    basis.finalize();
    return basis;
}

// Matrix of the degree-n differential in the given bases: one column per
// degree-n tuple, one row per degree-(n-1) tuple. Faces that die in the
// quotient are dropped; variants that are subcomplexes get their closure
// asserted rather than assumed.
inline SparseIntMatrix boundary_matrix_between(const Shelf& shelf, const Variant& v,
                                               const ChainBasis& domain,
                                               const ChainBasis& codomain,
                                               const ChainBudget& budget = {})
{
    const int deg = domain.degree;
    SparseIntMatrix m(codomain.dim(), domain.dim());

    if (deg == 0) {
        if (v.kind == Variant::Kind::Augmented)
            for (int c = 0; c < domain.dim(); ++c) m.add(0, c, Int(1));
        m.canonicalize();
        return m;
    }

    Chain acc;
    for (int c = 0; c < domain.dim(); ++c) {
        const Tuple& t = domain.tuples[static_cast<std::size_t>(c)];
        acc.clear();
        for (int i = 0; i <= deg; ++i)
            chain_add(acc, face(shelf, t, i), Int(i % 2 == 0 ? 1 : -1));
        for (const auto& [u, coeff] : acc) {
            switch (v.kind) {
            case Variant::Kind::Full:
            case Variant::Kind::Augmented: break;
            case Variant::Kind::Reduced: {
                bool all_b = true;
                for (auto e : u)
                    if (e != v.basepoint) {
                        all_b = false;
                        break;
                    }
                if (all_b) continue;
                break;
            }
            case Variant::Kind::Normalized:
                if (has_adjacent_repeat(u)) continue;
                break;
            case Variant::Kind::Degenerate:
                if (!has_adjacent_repeat(u))
                    throw InternalError("degenerate complex not closed at " +
                                        tuple_to_string(t));
                break;
            case Variant::Kind::BEnding:
                if (has_adjacent_repeat(u)) continue;
                if (u.back() != v.basepoint)
                    throw StructuralError("b-ending complex is not closed: face " +
                                          tuple_to_string(u) + " of " + tuple_to_string(t) +
                                          " does not end with the basepoint");
                break;
            case Variant::Kind::Relative:
                if (detail::in_subset(u, v.subset)) continue;
                break;
            case Variant::Kind::NormalizedRelative:
                if (has_adjacent_repeat(u)) continue;
                if (detail::in_subset(u, v.subset)) continue;
                break;
            }
            m.add(codomain.position(u), c, coeff);
            if (m.nnz() > budget.max_matrix_entries)
                throw BudgetError("boundary matrix exceeds the entry budget");
        }
    }
    m.canonicalize();
    return m;
}

inline SparseIntMatrix boundary_matrix(const Shelf& shelf, int degree, const Variant& v,
                                       const ChainBudget& budget = {})
{
    ChainBasis dom = chain_basis(shelf, degree, v, budget);
    ChainBasis cod = chain_basis(shelf, degree - 1, v, budget);
    return boundary_matrix_between(shelf, v, dom, cod, budget);
}

// Bases for degrees [n_lo - 1, n_hi] and matrices for [n_lo, n_hi], with
// d(n) . d(n+1) = 0 asserted on every adjacent pair.
struct ChainComplexSlice {
    Variant variant;
    int n_lo = 0;
    int n_hi = 0;
    std::vector<ChainBasis> bases;
    std::vector<SparseIntMatrix> boundaries;

    const ChainBasis& basis(int degree) const
    {
        if (degree < n_lo - 1 || degree > n_hi) throw InternalError("basis degree outside slice");
        return bases[static_cast<std::size_t>(degree - (n_lo - 1))];
    }

    const SparseIntMatrix& boundary(int degree) const
    {
        if (degree < n_lo || degree > n_hi) throw InternalError("boundary degree outside slice");
        return boundaries[static_cast<std::size_t>(degree - n_lo)];
    }
};

inline ChainComplexSlice build_slice(const Shelf& shelf, int n_lo, int n_hi, const Variant& v,
                                     const ChainBudget& budget = {})
{
    if (n_lo < 0 || n_lo > n_hi) throw StructuralError("bad degree range");
    ChainComplexSlice slice;
    slice.variant = v;
    slice.n_lo = n_lo;
    slice.n_hi = n_hi;
    for (int d = n_lo - 1; d <= n_hi; ++d)
        slice.bases.push_back(chain_basis(shelf, d, v, budget));
    for (int d = n_lo; d <= n_hi; ++d)
        slice.boundaries.push_back(
            boundary_matrix_between(shelf, v, slice.basis(d), slice.basis(d - 1), budget));
    for (int d = n_lo; d + 1 <= n_hi; ++d)
        if (!multiply(slice.boundary(d), slice.boundary(d + 1)).is_zero())
            throw InternalError("d∘d != 0 at degree " + std::to_string(d + 1) + " in the " +
                                v.name() + " complex");
    return slice;
}

} // namespace disthom
