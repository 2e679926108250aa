#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace teamcheck {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A set of worlds, stored as a bitset over the model's world indices.
class Team {
public:
    Team() = default;
    explicit Team(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    std::size_t universe() const { return universe_; }

    void add(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void remove(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool contains(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    std::size_t size() const;
    bool empty() const;
    bool subset_of(const Team& other) const;
    bool intersects(const Team& other) const;
    void unite(const Team& other);

    std::vector<std::uint32_t> members() const; // ascending world indices

    bool operator==(const Team& other) const {
        return universe_ == other.universe_ && words_ == other.words_;
    }
    bool operator!=(const Team& other) const { return !(*this == other); }
    bool operator<(const Team& other) const { return words_ < other.words_; }

    static Team from_indices(std::size_t universe, const std::vector<std::uint32_t>& indices);

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

// Immutable pointed structure: named worlds, a relation given as per-world
// successor sets, and a valuation. Proposition lookup is precomputed as an
// inverse view (proposition -> set of worlds).
class KripkeModel {
public:
    KripkeModel(std::vector<std::string> worlds,
                std::vector<std::pair<std::string, std::string>> relation,
                std::map<std::string, std::vector<std::string>> valuation);

    std::size_t size() const { return worlds_.size(); }
    const std::vector<std::string>& worlds() const { return worlds_; }
    const std::string& world_name(std::size_t i) const { return worlds_[i]; }
    std::optional<std::size_t> world_index(const std::string& name) const;

    const Team& successors_of(std::size_t world) const { return successor_sets_[world]; }
    Team successors(const Team& team) const;

    // Every world has at least one successor.
    bool serial() const { return serial_; }

    bool has_prop(std::size_t world, const std::string& prop) const;
    const Team& worlds_with(const std::string& prop) const;
    const std::vector<std::string>& valuation_of(std::size_t world) const {
        return valuation_[world];
    }

    // Relation as sorted (from, to) index pairs, for serialization and tests.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> relation() const;

    bool operator==(const KripkeModel& other) const;

private:
    std::vector<std::string> worlds_;
    std::map<std::string, std::size_t> index_;
    std::vector<Team> successor_sets_;
    std::vector<std::vector<std::string>> valuation_; // sorted per world
    std::map<std::string, Team> prop_worlds_;
    Team no_worlds_;
    bool serial_ = false;
};

// Team from a comma-separated list of world names, optionally wrapped in
// braces: "a,b" and "{a, b}" both work, "" and "{}" are the empty team.
// Names are trimmed and deduplicated, unknown names raise ModelError.
Team parse_team(const KripkeModel& model, std::string_view text);
std::string format_team(const KripkeModel& model, const Team& team);

// JSON schema:
//   {"worlds": ["a", ...],
//    "relation": [["a","b"], ...],
//    "valuation": {"a": ["p", ...], ...}}
// Undeclared worlds in relation/valuation and duplicate world names raise
// ModelError. save_model emits worlds in declaration order, the relation
// sorted by index pairs, and only non-empty valuation entries, so
// load_model(save_model(m)) == m.
KripkeModel load_model(std::string_view json_text);
std::string save_model(const KripkeModel& model);

// The team of successor teams <T>: all T' contained in successors(T) such
// that every member of T has a successor in T'. Enumerated lazily in a fixed
// order: by increasing cardinality, then lexicographically by ascending
// world index sequence. The visitor returns true to stop; the function
// returns true when stopped early. <empty> yields exactly the empty team;
// if some member of T has no successor nothing is yielded.
bool for_each_successor_team(const KripkeModel& model, const Team& team,
                             const std::function<bool(const Team&)>& visit);

// Eager variant for tests and small inputs.
std::vector<Team> successor_teams(const KripkeModel& model, const Team& team);

// Seeded random model over the given propositions; every world draws each
// edge with probability edge_prob and each proposition with probability 1/2.
// With force_serial, worlds that end up with no successor get one random
// outgoing edge.
KripkeModel make_random_model(std::uint64_t seed, std::size_t world_count, double edge_prob,
                              const std::vector<std::string>& props, bool force_serial = false);

} // namespace teamcheck
