#include "phasegrover/oracle.hpp"

#include "phasegrover/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace phasegrover {

using nlohmann::json;

OracleSpec::OracleSpec(std::uint64_t n_total, std::vector<std::uint64_t> marked,
                       std::optional<std::string> name)
    : n_total_(n_total), marked_(std::move(marked)), name_(std::move(name)) {
    if (n_total_ < 1) {
        throw CountError("oracle needs N >= 1");
    }
    for (std::size_t i = 0; i < marked_.size(); ++i) {
        if (marked_[i] >= n_total_) {
            throw RangeError("marked index " + std::to_string(marked_[i]) + " outside [0, " +
                             std::to_string(n_total_) + ")");
        }
        if (i > 0 && marked_[i] <= marked_[i - 1]) {
            throw RangeError("marked indices must be strictly increasing");
        }
    }
}

bool OracleSpec::is_marked(std::uint64_t index) const {
    return std::binary_search(marked_.begin(), marked_.end(), index);
}

std::vector<std::uint8_t> OracleSpec::mask() const {
    std::vector<std::uint8_t> m(n_total_, 0);
    for (auto i : marked_) {
        m[i] = 1;
    }
    return m;
}

Placement parse_placement(std::string_view text) {
    if (text == "first") return Placement::first;
    if (text == "last") return Placement::last;
    if (text == "random") return Placement::random;
    throw ParseError("unknown placement '" + std::string(text) + "' (expected first, last or random)");
}

std::string_view placement_name(Placement p) {
    switch (p) {
    case Placement::first: return "first";
    case Placement::last: return "last";
    case Placement::random: return "random";
    }
    return "?";
}

namespace {

// Unbiased integer in [0, bound) by rejection; the standard distributions are
// implementation-defined, this is not.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit) {
            return x % bound;
        }
    }
}

} // namespace

OracleSpec generate_oracle(std::uint64_t n_total, std::uint64_t n_marked, PlacementRule placement) {
    if (n_total < 1) {
        throw CountError("oracle needs N >= 1");
    }
    if (n_marked > n_total) {
        throw CountError("cannot mark t = " + std::to_string(n_marked) + " of N = " +
                         std::to_string(n_total) + " indices");
    }
    std::vector<std::uint64_t> marked;
    marked.reserve(n_marked);
    switch (placement.kind) {
    case Placement::first:
        for (std::uint64_t i = 0; i < n_marked; ++i) marked.push_back(i);
        break;
    case Placement::last:
        for (std::uint64_t i = n_total - n_marked; i < n_total; ++i) marked.push_back(i);
        break;
    case Placement::random: {
        // Floyd's sampling: t draws, no O(N) scratch.
        std::mt19937_64 rng(placement.seed);
        std::set<std::uint64_t> chosen;
        for (std::uint64_t j = n_total - n_marked; j < n_total; ++j) {
            const std::uint64_t r = draw_below(rng, j + 1);
            if (!chosen.insert(r).second) {
                chosen.insert(j);
            }
        }
        marked.assign(chosen.begin(), chosen.end());
        break;
    }
    }
    return OracleSpec(n_total, std::move(marked));
}

namespace {

std::uint64_t as_count(const json& v, const char* field) {
    if (v.is_number_unsigned()) {
        return v.get<std::uint64_t>();
    }
    if (v.is_number_integer()) {
        throw RangeError(std::string("field '") + field + "' must be non-negative");
    }
    throw ParseError(std::string("field '") + field + "' must be an integer");
}

} // namespace

ParsedOracle parse_oracle(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed oracle document: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("oracle document must be a JSON object");
    }
    const bool compact = doc.contains("t");
    for (const auto& [key, value] : doc.items()) {
        const bool known = compact ? (key == "n" || key == "t" || key == "placement" || key == "seed" || key == "name")
                                   : (key == "n" || key == "marked" || key == "name");
        if (!known) {
            throw ParseError("unknown field '" + key + "'");
        }
    }
    if (!doc.contains("n")) {
        throw ParseError("missing field 'n'");
    }
    // Negative N is a count error, not a range error.
    const json& nv = doc.at("n");
    if (nv.is_number_integer() && !nv.is_number_unsigned()) {
        throw CountError("N must be >= 1");
    }
    const std::uint64_t n = as_count(nv, "n");
    if (n < 1) {
        throw CountError("N must be >= 1");
    }
    std::optional<std::string> name;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) {
            throw ParseError("field 'name' must be a string");
        }
        name = doc["name"].get<std::string>();
    }

    if (compact) {
        const std::uint64_t t = as_count(doc.at("t"), "t");
        PlacementRule rule;
        if (doc.contains("placement")) {
            if (!doc["placement"].is_string()) {
                throw ParseError("field 'placement' must be a string");
            }
            rule.kind = parse_placement(doc["placement"].get<std::string>());
        }
        if (doc.contains("seed")) {
            rule.seed = as_count(doc["seed"], "seed");
        }
        OracleSpec generated = generate_oracle(n, t, rule);
        std::vector<std::uint64_t> marked(generated.marked().begin(), generated.marked().end());
        return {OracleSpec(n, std::move(marked), std::move(name)), false};
    }

    if (!doc.contains("marked")) {
        throw ParseError("missing field 'marked'");
    }
    const json& mv = doc["marked"];
    if (!mv.is_array()) {
        throw ParseError("field 'marked' must be an array");
    }
    std::vector<std::uint64_t> marked;
    marked.reserve(mv.size());
    for (const auto& v : mv) {
        if (v.is_number_integer() && !v.is_number_unsigned()) {
            throw RangeError("marked index " + v.dump() + " is negative");
        }
        if (!v.is_number_unsigned()) {
            throw ParseError("marked entries must be integers");
        }
        const auto idx = v.get<std::uint64_t>();
        if (idx >= n) {
            throw RangeError("marked index " + std::to_string(idx) + " outside [0, " + std::to_string(n) + ")");
        }
        marked.push_back(idx);
    }
    const bool sorted = std::adjacent_find(marked.begin(), marked.end(),
                                           [](auto a, auto b) { return a >= b; }) == marked.end();
    if (!sorted) {
        std::sort(marked.begin(), marked.end());
        marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
    }
    return {OracleSpec(n, std::move(marked), std::move(name)), !sorted};
}

std::string serialize_oracle(const OracleSpec& oracle) {
    // Fixed key order: n, marked, name.
    std::ostringstream os;
    os << "{\"n\":" << oracle.n_total() << ",\"marked\":[";
    for (std::size_t i = 0; i < oracle.marked().size(); ++i) {
        if (i) os << ',';
        os << oracle.marked()[i];
    }
    os << ']';
    if (oracle.name()) {
        os << ",\"name\":" << json(*oracle.name()).dump();
    }
    os << '}';
    return os.str();
}

ParsedOracle load_oracle_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open oracle file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_oracle(buf.str());
}

} // namespace phasegrover
