#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "abelian_group.hpp"
#include "errors.hpp"
#include "fspindle.hpp"
#include "table.hpp"

namespace disthom {

using json = nlohmann::json;

// {"size": n, "table": [[...], ...]}; entries may be 1-based with the flag.
inline OperationTable parse_table_json(const json& j, bool one_based = false)
{
    if (!j.is_object() || !j.contains("size") || !j.contains("table"))
        throw StructuralError("table json: expected {\"size\": n, \"table\": [[...],...]}");
    const int n = j.at("size").get<int>();
    const auto& rows = j.at("table");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw StructuralError("table json: row count does not match size");
    std::vector<int> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw StructuralError("table json: each row needs exactly 'size' entries");
        for (const auto& cell : row) entries.push_back(cell.get<int>() - (one_based ? 1 : 0));
    }
    return OperationTable(n, std::move(entries));
}

// {"f": [f(1), ..., f(m)]} with 1-based values over X0.
inline FSpindleSpec parse_fspindle_json(const json& j)
{
    if (!j.is_object() || !j.contains("f") || !j.at("f").is_array())
        throw StructuralError("f-spindle json: expected {\"f\": [...]}");
    std::vector<int> f;
    for (const auto& v : j.at("f")) f.push_back(v.get<int>() - 1);
    return FSpindleSpec(std::move(f));
}

// {"blocks": [{"size": m, "f": [...1-based...]}, ...],
//  "add_singleton_block": bool}
inline BlockSpindleSpec parse_block_spindle_json(const json& j)
{
    if (!j.is_object() || !j.contains("blocks") || !j.at("blocks").is_array())
        throw StructuralError("block-spindle json: expected {\"blocks\": [...]}");
    std::vector<BlockSpindleSpec::Block> blocks;
    for (const auto& bj : j.at("blocks")) {
        BlockSpindleSpec::Block b;
        b.size = bj.at("size").get<int>();
        for (const auto& v : bj.at("f")) b.f.push_back(v.get<int>() - 1);
        blocks.push_back(std::move(b));
    }
    const bool add_singleton = j.value("add_singleton_block", false);
    return add_singleton ? BlockSpindleSpec::with_singleton(std::move(blocks))
                         : BlockSpindleSpec(std::move(blocks));
}

inline json load_json_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw std::ios_base::failure("cannot open " + path);
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw std::ios_base::failure(path + ": " + e.what());
    }
    return j;
}

inline json group_to_json(const FGAbelianGroup& g)
{
    json t = json::array();
    for (const auto& d : g.invariant_factors) {
        if (fits_slong(d))
            t.push_back(d.get_si());
        else
            t.push_back(d.get_str());
    }
    return json{{"free_rank", g.free_rank}, {"torsion", t}};
}

inline FGAbelianGroup group_from_json(const json& j)
{
    std::vector<Int> factors;
    for (const auto& v : j.at("torsion")) {
        if (v.is_string())
            factors.emplace_back(v.get<std::string>());
        else
            factors.emplace_back(v.get<long>());
    }
    return FGAbelianGroup(j.at("free_rank").get<long>(), std::move(factors));
}

} // namespace disthom
