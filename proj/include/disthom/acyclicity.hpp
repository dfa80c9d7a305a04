#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "chain.hpp"
#include "errors.hpp"
#include "homology.hpp"
#include "table.hpp"

namespace disthom {

// Is A closed under the right action of X, with a |-> a |> x a permutation
// of A for every x in X?
inline bool is_right_permutation_set(const Shelf& s, const std::vector<int>& a)
{
    if (a.empty()) return false;
    std::set<int> A(a.begin(), a.end());
    for (int x = 0; x < s.size(); ++x) {
        std::set<int> image;
        for (int e : A) {
            const int v = s.op(e, x);
            if (!A.count(v)) return false;
            if (!image.insert(v).second) return false;
        }
    }
    return true;
}

// Search for a subset witnessing acyclicity: the right-closure of each
// singleton, then the whole carrier (every column a bijection). Finding
// nothing is reported as absence of a witness, not as a proof none exists.
inline std::optional<std::vector<int>> find_acyclicity_witness(const Shelf& s)
{
    for (int seed = 0; seed < s.size(); ++seed) {
        std::set<int> A{seed};
        bool grew = true;
        while (grew) {
            grew = false;
            for (int e : std::vector<int>(A.begin(), A.end()))
                for (int x = 0; x < s.size(); ++x)
                    if (A.insert(s.op(e, x)).second) grew = true;
        }
        std::vector<int> v(A.begin(), A.end());
        if (is_right_permutation_set(s, v)) return v;
    }
    std::vector<int> all(static_cast<std::size_t>(s.size()));
    for (int i = 0; i < s.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    if (is_right_permutation_set(s, all)) return all;
    return std::nullopt;
}

// Contracting homotopy h(x) = (a_x, x) of the augmented complex, defined
// whenever X acts on A from the right by permutations. a_x is the unique
// element with a = (..(a_x |> x_0) |> x_1 ..) |> x_n, obtained by inverting
// the right multiplications from the last entry backwards.
class ContractingHomotopy {
public:
    ContractingHomotopy(const Shelf& s, std::vector<int> a) : A_(std::move(a))
    {
        std::sort(A_.begin(), A_.end());
        A_.erase(std::unique(A_.begin(), A_.end()), A_.end());
        if (!is_right_permutation_set(s, A_))
            throw StructuralError("contracting homotopy: subset is not a right-permutation set");
        anchor_ = A_.front();
        inverse_.assign(static_cast<std::size_t>(s.size()),
                        std::vector<int>(static_cast<std::size_t>(s.size()), -1));
        for (int x = 0; x < s.size(); ++x)
            for (int e : A_) inverse_[static_cast<std::size_t>(x)][static_cast<std::size_t>(s.op(e, x))] = e;
    }

    int anchor() const { return anchor_; }
    const std::vector<int>& witness() const { return A_; }

    // a_x for a basis tuple.
    int solve(const Tuple& t) const
    {
        int u = anchor_;
        for (auto it = t.rbegin(); it != t.rend(); ++it) {
            u = inverse_[static_cast<std::size_t>(*it)][static_cast<std::size_t>(u)];
            if (u < 0) throw InternalError("homotopy inverse left the witness set");
        }
        return u;
    }

    Tuple apply(const Tuple& t) const
    {
        Tuple r;
        r.reserve(t.size() + 1);
        r.push_back(static_cast<std::uint8_t>(solve(t)));
        r.insert(r.end(), t.begin(), t.end());
        return r;
    }

    Chain apply(const Chain& c) const
    {
        Chain out;
        for (const auto& [t, coeff] : c) chain_add(out, apply(t), coeff);
        return out;
    }

private:
    std::vector<int> A_;
    int anchor_ = 0;
    std::vector<std::vector<int>> inverse_;
};

// dh + hd = id on one basis tuple of the augmented complex. In degree 0 the
// augmentation sends every generator to 1 and h of the unit is the anchor.
inline bool homotopy_identity_holds(const Shelf& s, const ContractingHomotopy& h,
                                    const Tuple& t)
{
    Chain lhs = boundary_chain(s, h.apply(t));
    if (t.size() == 1) {
        chain_add(lhs, Tuple{static_cast<std::uint8_t>(h.anchor())}, Int(1));
    } else {
        Chain dh = h.apply(boundary_chain(s, t));
        for (const auto& [u, coeff] : dh) chain_add(lhs, u, coeff);
    }
    Chain expect;
    chain_add(expect, t, Int(1));
    return lhs == expect;
}

struct AcyclicityReport {
    std::optional<std::vector<int>> witness;
    bool reduced_homology_trivial = false;
    bool homotopy_verified = false;
    std::map<int, FGAbelianGroup> reduced; // augmented homology per degree
};

// H~_n = 0 for n <= n_max by SNF, plus the homotopy identity on every full
// basis tuple of degree <= n_max when a witness is available.
inline AcyclicityReport verify_acyclicity(const Shelf& s, const std::vector<int>& witness,
                                          int n_max, const HomologyOptions& opt = {})
{
    AcyclicityReport rep;
    rep.witness = witness;
    HomologyResult h = compute_homology(s, Variant::augmented(), 0, n_max, opt);
    rep.reduced_homology_trivial = true;
    for (int n = 0; n <= n_max; ++n) {
        rep.reduced[n] = h.at(n);
        if (!rep.reduced[n].is_trivial()) rep.reduced_homology_trivial = false;
    }
    ContractingHomotopy hom(s, witness);
    rep.homotopy_verified = true;
    for (int n = 0; n <= n_max && rep.homotopy_verified; ++n) {
        ChainBasis basis = chain_basis(s, n, Variant::full(), opt.chain);
        for (const Tuple& t : basis.tuples)
            if (!homotopy_identity_holds(s, hom, t)) {
                rep.homotopy_verified = false;
                break;
            }
    }
    return rep;
}

} // namespace disthom
