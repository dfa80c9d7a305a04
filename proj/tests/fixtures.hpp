#pragma once

// Shared tables used across the suites. t1 is the 4-element f-spindle with
// Z_2 torsion in H_1 (basepoint at index 0, f = (1 2) with 3 -> 1 in 1-based
// labels); t2 is the 4-element two-block spindle with swaps on both blocks.

#include <disthom/fspindle.hpp>
#include <disthom/table.hpp>

namespace fixtures {

inline disthom::OperationTable t1()
{
    return disthom::OperationTable(4, {0, 2, 1, 1,
                                       0, 1, 2, 3,
                                       0, 1, 2, 3,
                                       0, 1, 2, 3});
}

inline disthom::FSpindleSpec t1_spec() { return disthom::FSpindleSpec({1, 0, 0}); }

inline disthom::OperationTable t2()
{
    return disthom::OperationTable(4, {0, 1, 3, 2,
                                       0, 1, 3, 2,
                                       1, 0, 2, 3,
                                       1, 0, 2, 3});
}

inline disthom::BlockSpindleSpec t2_spec()
{
    return disthom::BlockSpindleSpec({{2, {1, 0}}, {2, {1, 0}}});
}

inline disthom::OperationTable dihedral(int n)
{
    std::vector<int> e;
    e.reserve(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) e.push_back(((2 * y - x) % n + n) % n);
    return disthom::OperationTable(n, std::move(e));
}

inline disthom::OperationTable right_trivial(int n)
{
    std::vector<int> e;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) e.push_back(y);
    return disthom::OperationTable(n, std::move(e));
}

inline disthom::OperationTable xor2()
{
    return disthom::OperationTable(2, {0, 1, 1, 0});
}

} // namespace fixtures
