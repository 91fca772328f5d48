#pragma once

// Explicit oracles: the predicate F over Z_N materialized as its set of
// marked (F = 1) indices.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phasegrover {

class OracleSpec {
public:
    // `marked` must be strictly increasing and inside [0, n_total).
    // Throws CountError for n_total < 1 and RangeError for bad indices.
    OracleSpec(std::uint64_t n_total, std::vector<std::uint64_t> marked,
               std::optional<std::string> name = std::nullopt);

    std::uint64_t n_total() const { return n_total_; }
    std::uint64_t n_marked() const { return marked_.size(); }
    std::span<const std::uint64_t> marked() const { return marked_; }
    const std::optional<std::string>& name() const { return name_; }

    // F(i). O(log t).
    bool is_marked(std::uint64_t index) const;

    // Dense 0/1 mask of length N.
    std::vector<std::uint8_t> mask() const;

    friend bool operator==(const OracleSpec&, const OracleSpec&) = default;

private:
    std::uint64_t n_total_;
    std::vector<std::uint64_t> marked_;
    std::optional<std::string> name_;
};

enum class Placement { first, last, random };

struct PlacementRule {
    Placement kind = Placement::first;
    std::uint64_t seed = 0; // used only by Placement::random

    static PlacementRule first() { return {Placement::first, 0}; }
    static PlacementRule last() { return {Placement::last, 0}; }
    static PlacementRule random(std::uint64_t seed) { return {Placement::random, seed}; }
};

// Parses "first", "last" or "random"; throws ParseError otherwise.
Placement parse_placement(std::string_view text);
std::string_view placement_name(Placement p);

// t marked indices out of N. Random placement draws without replacement from
// a seeded mt19937_64 with an explicit integer reduction, so the set is the
// same on every platform.
OracleSpec generate_oracle(std::uint64_t n_total, std::uint64_t n_marked, PlacementRule placement);

struct ParsedOracle {
    OracleSpec oracle;
    // Input marked list was unsorted or had duplicates and was normalized.
    bool normalized = false;
};

// Accepts {"n": N, "marked": [...], "name"?: str} or the compact generator
// form {"n": N, "t": T, "placement": "first"|"last"|"random", "seed"?: S}.
// Unknown fields are rejected.
ParsedOracle parse_oracle(std::string_view text);

// Always the explicit form; parse_oracle(serialize_oracle(o)).oracle == o.
std::string serialize_oracle(const OracleSpec& oracle);

ParsedOracle load_oracle_file(const std::string& path);

} // namespace phasegrover
