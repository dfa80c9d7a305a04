#pragma once

#include <string>
#include <vector>

#include "errors.hpp"
#include "integers.hpp"
#include "smith.hpp"

namespace disthom {

// Isomorphism class of a finitely generated abelian group: Z^free_rank plus
// the invariant-factor chain d1 | d2 | ... with every di >= 2. The
// constructor canonicalizes, so equality of fields is isomorphism.
struct FGAbelianGroup {
    long free_rank = 0;
    std::vector<Int> invariant_factors;

    FGAbelianGroup() = default;

    FGAbelianGroup(long rank, std::vector<Int> factors) : free_rank(rank)
    {
        if (rank < 0) throw InternalError("negative free rank");
        normalize_factor_chain(factors);
        for (auto& d : factors) {
            if (sign_of(d) == 0)
                throw InternalError("invariant factor 0: Z summands belong in free_rank");
            if (d > 1) invariant_factors.push_back(std::move(d));
        }
    }

    static FGAbelianGroup trivial() { return {}; }
    static FGAbelianGroup free(long rank) { return {rank, {}}; }

    // Z_k^count, with k = 1 rendering as the trivial group.
    static FGAbelianGroup cyclic_power(const Int& k, long count)
    {
        if (sign_of(k) <= 0) throw InternalError("cyclic order must be positive");
        std::vector<Int> f(static_cast<std::size_t>(count), k);
        return {0, std::move(f)};
    }

    bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
    bool is_free() const { return invariant_factors.empty(); }

    Int torsion_order() const
    {
        Int t = 1;
        for (const auto& d : invariant_factors) t *= d;
        return t;
    }

    bool operator==(const FGAbelianGroup& o) const = default;
};

inline FGAbelianGroup group_directsum(const FGAbelianGroup& a, const FGAbelianGroup& b)
{
    std::vector<Int> f = a.invariant_factors;
    f.insert(f.end(), b.invariant_factors.begin(), b.invariant_factors.end());
    return {a.free_rank + b.free_rank, std::move(f)};
}

inline FGAbelianGroup group_power(const FGAbelianGroup& a, long k)
{
    if (k < 0) throw InternalError("negative direct-sum power");
    std::vector<Int> f;
    f.reserve(a.invariant_factors.size() * static_cast<std::size_t>(k));
    // A chain repeated with each factor k times consecutively is still a chain.
    for (const auto& d : a.invariant_factors)
        for (long i = 0; i < k; ++i) f.push_back(d);
    FGAbelianGroup r;
    r.free_rank = a.free_rank * k;
    r.invariant_factors = std::move(f);
    return r;
}

inline bool group_iso_eq(const FGAbelianGroup& a, const FGAbelianGroup& b)
{
    return a == b;
}

// "Z^r + Z_d1 + Z_d2 + ..." in chain order, with runs of an equal factor
// compressed to Z_d^k; "0" for the trivial group.
inline std::string group_to_string(const FGAbelianGroup& g)
{
    std::string s;
    if (g.free_rank == 1)
        s = "Z";
    else if (g.free_rank > 1)
        s = "Z^" + std::to_string(g.free_rank);
    for (std::size_t i = 0; i < g.invariant_factors.size();) {
        std::size_t j = i;
        while (j < g.invariant_factors.size() && g.invariant_factors[j] == g.invariant_factors[i])
            ++j;
        if (!s.empty()) s += " + ";
        s += "Z_" + g.invariant_factors[i].get_str();
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s.empty() ? "0" : s;
}

} // namespace disthom
