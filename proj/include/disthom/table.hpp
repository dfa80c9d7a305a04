#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace disthom {

// Finite binary operation x |> y on elements 0..size-1, stored row-major:
// entry(x, y) = x |> y. This is the raw input artifact; the Shelf/Spindle
// wrappers below certify the axioms.
class OperationTable {
public:
    OperationTable(int size, std::vector<int> entries)
        : size_(size), entries_(std::move(entries))
    {
        if (size_ < 1) throw StructuralError("operation table: size must be >= 1");
        if (entries_.size() != static_cast<std::size_t>(size_) * size_)
            throw StructuralError("operation table: entry count does not match size");
        for (int x = 0; x < size_; ++x)
            for (int y = 0; y < size_; ++y) {
                const int v = entries_[static_cast<std::size_t>(x) * size_ + y];
                if (v < 0 || v >= size_)
                    throw StructuralError("operation table: entry at row " + std::to_string(x) +
                                          ", column " + std::to_string(y) + " is out of range");
            }
    }

    int size() const { return size_; }

    int op(int x, int y) const { return entries_[static_cast<std::size_t>(x) * size_ + y]; }

    const std::vector<int>& raw() const { return entries_; }

    bool operator==(const OperationTable& o) const = default;

    // Stable content digest (FNV-1a over the canonical serialization), echoed
    // into reports so a rerun can be matched to its exact input.
    std::string digest() const
    {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            for (int k = 0; k < 8; ++k) {
                h ^= (v >> (8 * k)) & 0xff;
                h *= 1099511628211ull;
            }
        };
        mix(static_cast<std::uint64_t>(size_));
        for (int v : entries_) mix(static_cast<std::uint64_t>(v));
        std::ostringstream os;
        os << std::hex << h;
        return os.str();
    }

private:
    int size_;
    std::vector<int> entries_;
};

// Exhaustive axiom check result. Counterexample lists are complete up to
// `cap` per axiom; total counts are always exact.
struct ValidationReport {
    bool is_shelf = false;
    bool is_spindle = false;
    std::vector<std::array<int, 3>> distributivity_counterexamples;
    std::vector<int> idempotency_counterexamples;
    long distributivity_violations = 0;
    long idempotency_violations = 0;
    int cap = 10;
};

inline ValidationReport validate_shelf(const OperationTable& t, int cap = 10)
{
    ValidationReport rep;
    rep.cap = cap;
    const int n = t.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (t.op(t.op(x, y), z) != t.op(t.op(x, z), t.op(y, z))) {
                    ++rep.distributivity_violations;
                    if (static_cast<int>(rep.distributivity_counterexamples.size()) < cap)
                        rep.distributivity_counterexamples.push_back({x, y, z});
                }
    rep.is_shelf = rep.distributivity_violations == 0;
    return rep;
}

inline ValidationReport validate_spindle(const OperationTable& t, int cap = 10)
{
    ValidationReport rep = validate_shelf(t, cap);
    const int n = t.size();
    for (int x = 0; x < n; ++x)
        if (t.op(x, x) != x) {
            ++rep.idempotency_violations;
            if (static_cast<int>(rep.idempotency_counterexamples.size()) < cap)
                rep.idempotency_counterexamples.push_back(x);
        }
    rep.is_spindle = rep.is_shelf && rep.idempotency_violations == 0;
    return rep;
}

// Certified-distributive table.
class Shelf {
public:
    explicit Shelf(OperationTable t) : table_(std::move(t))
    {
        auto rep = validate_shelf(table_, 1);
        if (!rep.is_shelf) {
            const auto& c = rep.distributivity_counterexamples.front();
            throw StructuralError("not a shelf: distributivity fails at (" +
                                  std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
                                  std::to_string(c[2]) + ")");
        }
    }

    int size() const { return table_.size(); }
    int op(int x, int y) const { return table_.op(x, y); }
    const OperationTable& table() const { return table_; }

private:
    OperationTable table_;
};

// Certified-distributive and idempotent table.
class Spindle {
public:
    explicit Spindle(OperationTable t) : shelf_(std::move(t))
    {
        for (int x = 0; x < shelf_.size(); ++x)
            if (shelf_.op(x, x) != x)
                throw StructuralError("not a spindle: idempotency fails at element " +
                                      std::to_string(x));
    }

    int size() const { return shelf_.size(); }
    int op(int x, int y) const { return shelf_.op(x, y); }
    const OperationTable& table() const { return shelf_.table(); }
    const Shelf& shelf() const { return shelf_; }

private:
    Shelf shelf_;
};

// --- table file ingestion -------------------------------------------------

// CSV: one row per line, comma-separated entries. `one_based` shifts labels
// 1..n down to the internal 0..n-1.
inline OperationTable parse_table_csv(std::istream& is, bool one_based = false)
{
    std::vector<std::vector<int>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::vector<int> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stoi(cell) - (one_based ? 1 : 0));
            } catch (const std::exception&) {
                throw StructuralError("csv: line " + std::to_string(lineno) +
                                      ": bad cell '" + cell + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw StructuralError("csv: no rows");
    const int n = static_cast<int>(rows.size());
    std::vector<int> entries;
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw StructuralError("csv: row " + std::to_string(i + 1) + " has " +
                                  std::to_string(rows[i].size()) + " cells, expected " +
                                  std::to_string(n));
        entries.insert(entries.end(), rows[i].begin(), rows[i].end());
    }
    return OperationTable(n, std::move(entries));
}

} // namespace disthom
