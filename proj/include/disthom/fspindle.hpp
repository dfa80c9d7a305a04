#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "table.hpp"

namespace disthom {

// Spindle on X = {b} u X0 with x |> y = y except on the basepoint row, where
// b |> y = f(y). The basepoint is always index 0, so X0 sits at 1..|X0|; f is
// stored 0-based over X0 positions.
struct FSpindleSpec {
    std::vector<int> f;

    explicit FSpindleSpec(std::vector<int> f_values) : f(std::move(f_values))
    {
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i] < 0 || f[i] >= static_cast<int>(f.size()))
                throw StructuralError("f-spindle spec: f(" + std::to_string(i + 1) +
                                      ") is out of range");
    }

    int base_size() const { return static_cast<int>(f.size()); }
    int carrier_size() const { return base_size() + 1; }
};

inline Spindle assemble_f_spindle(const FSpindleSpec& spec)
{
    const int n = spec.carrier_size();
    std::vector<int> entries(static_cast<std::size_t>(n) * n);
    for (int y = 0; y < n; ++y) entries[y] = y == 0 ? 0 : spec.f[y - 1] + 1;
    for (int x = 1; x < n; ++x)
        for (int y = 0; y < n; ++y) entries[static_cast<std::size_t>(x) * n + y] = y;
    return Spindle(OperationTable(n, std::move(entries)));
}

// sigma_{k,r} on X0 = {1,...,k+r}: n -> n+1 below the cycle top, everything
// from k upward feeds back into 1. A k-cycle with r initial elements.
inline FSpindleSpec sigma_spec(int k, int r)
{
    if (k < 1 || r < 1) throw StructuralError("sigma spindle: need k >= 1 and r >= 1");
    std::vector<int> f(static_cast<std::size_t>(k) + r);
    for (int i = 0; i < k + r; ++i) f[i] = (i < k - 1) ? i + 1 : 0;
    return FSpindleSpec(std::move(f));
}

inline Spindle assemble_sigma_spindle(int k, int r)
{
    return assemble_f_spindle(sigma_spec(k, r));
}

// Disjoint blocks with consecutive index ranges; within a block the
// operation is right-trivial, across blocks it applies the target's block
// function.
struct BlockSpindleSpec {
    struct Block {
        int size = 0;
        std::vector<int> f; // 0-based within the block
    };

    std::vector<Block> blocks;

    explicit BlockSpindleSpec(std::vector<Block> bs) : blocks(std::move(bs))
    {
        if (blocks.empty()) throw StructuralError("block spindle: no blocks");
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const auto& b = blocks[i];
            if (b.size < 1)
                throw StructuralError("block spindle: block " + std::to_string(i) +
                                      " has size < 1");
            if (static_cast<int>(b.f.size()) != b.size)
                throw StructuralError("block spindle: block " + std::to_string(i) +
                                      " function length does not match its size");
            for (int v : b.f)
                if (v < 0 || v >= b.size)
                    throw StructuralError("block spindle: block " + std::to_string(i) +
                                          " function escapes the block");
        }
    }

    static BlockSpindleSpec with_singleton(std::vector<Block> bs)
    {
        std::vector<Block> all;
        all.push_back({1, {0}});
        for (auto& b : bs) all.push_back(std::move(b));
        return BlockSpindleSpec(std::move(all));
    }

    int carrier_size() const
    {
        int n = 0;
        for (const auto& b : blocks) n += b.size;
        return n;
    }

    // First index of each block in the assembled carrier.
    std::vector<int> offsets() const
    {
        std::vector<int> off;
        int o = 0;
        for (const auto& b : blocks) {
            off.push_back(o);
            o += b.size;
        }
        return off;
    }

    std::optional<std::size_t> singleton_block() const
    {
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].size == 1) return i;
        return std::nullopt;
    }
};

inline Spindle assemble_block_spindle(const BlockSpindleSpec& spec)
{
    const int n = spec.carrier_size();
    const auto off = spec.offsets();
    std::vector<int> block_of(n), pos_in_block(n);
    for (std::size_t i = 0; i < spec.blocks.size(); ++i)
        for (int p = 0; p < spec.blocks[i].size; ++p) {
            block_of[off[i] + p] = static_cast<int>(i);
            pos_in_block[off[i] + p] = p;
        }
    std::vector<int> entries(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const int j = block_of[y];
            entries[static_cast<std::size_t>(x) * n + y] =
                block_of[x] == j ? y : off[j] + spec.blocks[j].f[pos_in_block[y]];
        }
    return Spindle(OperationTable(n, std::move(entries)));
}

// Functional graph of f on X0. Cycle representatives are the minimal-index
// element on each cycle; `ell` is the gcd of all cycle lengths.
struct OrbitGraph {
    std::vector<int> orbit_id;             // per X0 element (0-based)
    int orbit_count = 0;                   // orb(f)
    std::vector<int> initial_elements;     // X0 \ im(f), sorted
    std::vector<std::vector<int>> cycles;  // one per orbit, rotated to min element
    long ell = 1;                          // gcd of cycle lengths

    int init_count() const { return static_cast<int>(initial_elements.size()); }
};

inline OrbitGraph analyze_orbit_graph(const FSpindleSpec& spec)
{
    const int m = spec.base_size();
    OrbitGraph g;
    g.orbit_id.assign(m, -1);
    if (m == 0) {
        // Empty X0: no orbits, no cycles. ell is irrelevant (init = 0) and is
        // fixed at 1 so no code path ever sees the infinite-case value 0.
        return g;
    }

    // Locate cycle members: repeatedly strip elements with no remaining
    // in-edges; whatever survives lies on a cycle.
    std::vector<int> indeg(m, 0);
    for (int v : spec.f) ++indeg[v];
    std::vector<int> queue;
    for (int i = 0; i < m; ++i)
        if (indeg[i] == 0) queue.push_back(i);
    std::vector<char> on_cycle(m, 1);
    while (!queue.empty()) {
        int u = queue.back();
        queue.pop_back();
        on_cycle[u] = 0;
        int v = spec.f[u];
        if (--indeg[v] == 0) queue.push_back(v);
    }

    // Components via union of x ~ f(x).
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int i = 0; i < m; ++i) {
        int a = find(i), b = find(spec.f[i]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    for (int i = 0; i < m; ++i)
        if (find(i) == i) g.orbit_id[i] = g.orbit_count++;
    for (int i = 0; i < m; ++i) g.orbit_id[i] = g.orbit_id[find(i)];

    std::vector<char> in_image(m, 0);
    for (int v : spec.f) in_image[v] = 1;
    for (int i = 0; i < m; ++i)
        if (!in_image[i]) g.initial_elements.push_back(i);

    // One cycle per orbit, listed from its minimal element.
    std::vector<char> done(m, 0);
    g.cycles.assign(g.orbit_count, {});
    for (int i = 0; i < m; ++i) {
        if (!on_cycle[i] || done[i]) continue;
        std::vector<int> cyc;
        int u = i;
        do {
            cyc.push_back(u);
            done[u] = 1;
            u = spec.f[u];
        } while (u != i);
        auto mn = std::min_element(cyc.begin(), cyc.end());
        std::rotate(cyc.begin(), mn, cyc.end());
        g.cycles[g.orbit_id[i]] = std::move(cyc);
    }

    long ell = 0;
    for (const auto& c : g.cycles) {
        if (c.empty()) throw InternalError("finite orbit without a cycle");
        ell = std::gcd(ell, static_cast<long>(c.size()));
    }
    g.ell = ell == 0 ? 1 : ell;
    return g;
}

// Recognize an assembled f-spindle (basepoint 0) and recover its spec:
// every non-basepoint row must be the identity and row 0 must fix 0.
inline std::optional<FSpindleSpec> extract_f_spindle(const OperationTable& t)
{
    const int n = t.size();
    if (t.op(0, 0) != 0) return std::nullopt;
    for (int x = 1; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (t.op(x, y) != y) return std::nullopt;
    std::vector<int> f(n - 1);
    for (int y = 1; y < n; ++y) {
        if (t.op(0, y) == 0) return std::nullopt; // f must land in X0
        f[y - 1] = t.op(0, y) - 1;
    }
    return FSpindleSpec(std::move(f));
}

} // namespace disthom
