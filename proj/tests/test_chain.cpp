#include <catch2/catch.hpp>

#include <disthom/chain.hpp>
#include <disthom/fspindle.hpp>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace disthom;

namespace {

std::vector<Shelf> sample_shelves()
{
    std::vector<Shelf> out;
    out.emplace_back(fixtures::t1());
    out.emplace_back(fixtures::t2());
    out.emplace_back(fixtures::dihedral(3));
    out.emplace_back(fixtures::right_trivial(4));
    out.emplace_back(assemble_sigma_spindle(2, 1).table());
    return out;
}

} // namespace

TEST_CASE("face maps")
{
    Shelf t1(fixtures::t1());
    SECTION("d0 drops the head")
    {
        REQUIRE(face(t1, {2, 3}, 0) == Tuple{3});
    }
    SECTION("d1 on the basepoint row applies f")
    {
        // d1(b, y) = (b |> y) = (f(y))
        REQUIRE(face(t1, {0, 1}, 1) == Tuple{2});
        REQUIRE(face(t1, {0, 1, 3}, 1) == Tuple{2, 3});
    }
    SECTION("index out of range")
    {
        REQUIRE_THROWS_AS(face(t1, {0, 1}, 2), StructuralError);
        REQUIRE_THROWS_AS(face(t1, {0, 1}, -1), StructuralError);
    }
}

TEST_CASE("simplicial identity d^i d^j = d^(j-1) d^i for i < j")
{
    // exhaustive over all tuples of degree <= 4 on carriers of size <= 4
    for (const Shelf& s : sample_shelves()) {
        for (int n = 1; n <= 4; ++n) {
            ChainBasis basis = chain_basis(s, n, Variant::full());
            for (const Tuple& t : basis.tuples)
                for (int j = 1; j <= n; ++j)
                    for (int i = 0; i < j; ++i)
                        REQUIRE(face(s, face(s, t, j), i) == face(s, face(s, t, i), j - 1));
        }
    }
}

TEST_CASE("basis dimensions per variant")
{
    Shelf t2(fixtures::t2());
    SECTION("full dims are |X|^(n+1)")
    {
        ChainComplexSlice sl = build_slice(t2, 0, 3, Variant::full());
        REQUIRE(sl.basis(0).dim() == 4);
        REQUIRE(sl.basis(1).dim() == 16);
        REQUIRE(sl.basis(2).dim() == 64);
        REQUIRE(sl.basis(3).dim() == 256);
    }
    SECTION("normalized dims are |X|(|X|-1)^n")
    {
        Shelf t1(fixtures::t1());
        ChainComplexSlice sl = build_slice(t1, 0, 2, Variant::normalized());
        REQUIRE(sl.basis(0).dim() == 4);
        REQUIRE(sl.basis(1).dim() == 12);
        REQUIRE(sl.basis(2).dim() == 36);
    }
    SECTION("degenerate dims on the sigma_5 spindle are 0, 7, 91")
    {
        // inclusion-exclusion oracle: degree 0 has no adjacent pair, degree 1
        // has the |X| diagonal pairs, degree 2 has 7^2 + 7^2 - 7 = 91
        Shelf s(assemble_sigma_spindle(5, 1).table());
        ChainComplexSlice sl = build_slice(s, 0, 2, Variant::degenerate());
        REQUIRE(sl.basis(0).dim() == 0);
        REQUIRE(sl.basis(1).dim() == 7);
        REQUIRE(sl.basis(2).dim() == 91);
    }
    SECTION("full = normalized + degenerate, degree by degree")
    {
        for (int n = 0; n <= 4; ++n) {
            const int full = chain_basis(t2, n, Variant::full()).dim();
            const int norm = chain_basis(t2, n, Variant::normalized()).dim();
            const int degen = chain_basis(t2, n, Variant::degenerate()).dim();
            REQUIRE(full == norm + degen);
        }
    }
    SECTION("b-ending dims are (|X|-1)^n")
    {
        Shelf t1(fixtures::t1());
        for (int n = 0; n <= 3; ++n)
            REQUIRE(chain_basis(t1, n, Variant::b_ending(0)).dim() ==
                    static_cast<int>(std::pow(3, n)));
    }
    SECTION("bases are sorted and duplicate-free")
    {
        for (int n = 0; n <= 3; ++n) {
            ChainBasis b = chain_basis(t2, n, Variant::degenerate());
            REQUIRE(std::is_sorted(b.tuples.begin(), b.tuples.end()));
            REQUIRE(std::adjacent_find(b.tuples.begin(), b.tuples.end()) == b.tuples.end());
        }
    }
}

TEST_CASE("boundary matrices")
{
    Shelf t1(fixtures::t1());
    SECTION("trivial spindle: the normalized differential vanishes, HN = CN")
    {
        // d0 and d1 cancel and every higher face is degenerate
        Shelf tr(fixtures::right_trivial(3));
        for (int n = 1; n <= 3; ++n) {
            SparseIntMatrix m = boundary_matrix(tr, n, Variant::normalized());
            REQUIRE(m.is_zero());
        }
    }
    SECTION("one-element spindle, normalized, degree 1: a 0x0 matrix")
    {
        Shelf pt(OperationTable(1, {0}));
        SparseIntMatrix m = boundary_matrix(pt, 1, Variant::normalized());
        REQUIRE(m.rows == 1); // unique degree-0 generator
        REQUIRE(m.cols == 0);
    }
    SECTION("d1 of the f-spindle: columns (y) - (f(y)) on the basepoint rows")
    {
        SparseIntMatrix m = boundary_matrix(t1, 1, Variant::full());
        REQUIRE(m.rows == 4);
        REQUIRE(m.cols == 16);
        auto d = m.to_dense();
        ChainBasis b1 = chain_basis(t1, 1, Variant::full());
        for (int c = 0; c < 16; ++c) {
            const Tuple& t = b1.tuples[static_cast<std::size_t>(c)];
            for (int r = 0; r < 4; ++r) {
                Int expect = 0;
                if (t[0] == 0) { // (b, y) -> (y) - (f(y))
                    if (r == t[1]) expect += 1;
                    if (r == t1.op(0, t[1])) expect -= 1;
                }
                REQUIRE(d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == expect);
            }
        }
    }
    SECTION("augmented degree 0: the all-ones row")
    {
        SparseIntMatrix m = boundary_matrix(t1, 0, Variant::augmented());
        REQUIRE(m.rows == 1);
        REQUIRE(m.cols == 4);
        REQUIRE(m.nnz() == 4);
        for (const auto& e : m.entries) REQUIRE(e.val == 1);
    }
    SECTION("boundary matches the dense face-formula oracle on the full complex")
    {
        for (const Shelf& s : sample_shelves())
            for (int n = 1; n <= 3; ++n) {
                SparseIntMatrix m = boundary_matrix(s, n, Variant::full());
                REQUIRE(m.to_dense() == oracle::naive_full_boundary(s.table(), n));
            }
    }
}

TEST_CASE("d∘d = 0 for every variant")
{
    std::vector<Variant> variants{Variant::full(),       Variant::augmented(),
                                  Variant::reduced(0),   Variant::normalized(),
                                  Variant::degenerate(), Variant::b_ending(0)};
    Shelf t1(fixtures::t1());
    for (const Variant& v : variants) {
        INFO(v.name());
        // build_slice asserts the identity internally
        REQUIRE_NOTHROW(build_slice(t1, 0, 4, v));
    }
    // relative variants, full and normalized
    REQUIRE_NOTHROW(build_slice(t1, 0, 4, Variant::relative({1, 2, 3})));
    REQUIRE_NOTHROW(build_slice(t1, 0, 4, Variant::normalized_relative({1, 2, 3})));
    // and on a non-spindle shelf for the variants that allow it
    Shelf shifted(OperationTable(3, {1, 1, 1, 2, 2, 2, 0, 0, 0})); // x|>y = x+1 mod 3
    REQUIRE_NOTHROW(build_slice(shifted, 0, 4, Variant::full()));
    REQUIRE_NOTHROW(build_slice(shifted, 0, 4, Variant::augmented()));
}

TEST_CASE("degenerate tuples are closed under the differential")
{
    // the matrix builder asserts closure; also check the image lies in the
    // degenerate span explicitly via chains
    for (const Shelf& s : {Shelf(fixtures::t1()), Shelf(fixtures::t2())})
        for (int n = 2; n <= 4; ++n) {
            ChainBasis basis = chain_basis(s, n, Variant::degenerate());
            for (const Tuple& t : basis.tuples)
                for (const auto& [u, coeff] : boundary_chain(s, t))
                    REQUIRE(has_adjacent_repeat(u));
        }
}

TEST_CASE("variant preconditions and budgets")
{
    Shelf shifted(OperationTable(3, {1, 1, 1, 2, 2, 2, 0, 0, 0})); // row-constant shelf, not a spindle
    SECTION("normalized/degenerate require a spindle")
    {
        REQUIRE_THROWS_AS(boundary_matrix(shifted, 1, Variant::normalized()), StructuralError);
        REQUIRE_THROWS_AS(boundary_matrix(shifted, 1, Variant::degenerate()), StructuralError);
    }
    SECTION("b-ending escapes on a table whose basepoint column moves")
    {
        Shelf t2(fixtures::t2());
        REQUIRE_THROWS_AS(build_slice(t2, 0, 2, Variant::b_ending(0)), StructuralError);
    }
    SECTION("relative subset must be closed")
    {
        Shelf t1(fixtures::t1());
        REQUIRE_THROWS_AS(chain_basis(t1, 1, Variant::relative({0, 1})), StructuralError);
        REQUIRE_NOTHROW(chain_basis(t1, 1, Variant::relative({1, 2, 3})));
    }
    SECTION("degree cap")
    {
        ChainBudget b;
        b.degree_cap = 2;
        Shelf t1(fixtures::t1());
        REQUIRE_THROWS_AS(chain_basis(t1, 3, Variant::full(), b), BudgetError);
    }
    SECTION("tuple budget")
    {
        ChainBudget b;
        b.max_tuples = 10;
        Shelf t1(fixtures::t1());
        REQUIRE_THROWS_AS(chain_basis(t1, 2, Variant::full(), b), BudgetError);
    }
}

TEST_CASE("b-ending bases sit inside normalized bases with the split property")
{
    // every normalized tuple either ends in b or is the h-image source of one
    // that does not: dim CN_n = dim Cb_n + dim Cb_(n+1) restricted to images,
    // i.e. (X-1)^n + (X-1)^(n+1)... checked as dim CN_n = cb_n + (cn with
    // nonfinal b dropped) via the closed counts
    Shelf t1(fixtures::t1());
    for (int n = 0; n <= 3; ++n) {
        const long cn = chain_basis(t1, n, Variant::normalized()).dim();
        const long cb = chain_basis(t1, n, Variant::b_ending(0)).dim();
        // tuples not ending in b are exactly the h-preimages of degree n+1
        // b-ending tuples other than those ending (b, b) -- i.e. cb_(n+1)
        const long cb1 = chain_basis(t1, n + 1, Variant::b_ending(0)).dim();
        REQUIRE(cn == cb + cb1);
    }
}
