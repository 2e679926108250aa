#include "teamcheck/kripke.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cctype>
#include <random>

namespace teamcheck {

// Team

std::size_t Team::size() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool Team::empty() const {
    for (std::uint64_t w : words_)
        if (w) return false;
    return true;
}

bool Team::subset_of(const Team& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

bool Team::intersects(const Team& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i]) return true;
    return false;
}

void Team::unite(const Team& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
}

std::vector<std::uint32_t> Team::members() const {
    std::vector<std::uint32_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            const int b = std::countr_zero(bits);
            out.push_back(static_cast<std::uint32_t>(w * 64 + b));
            bits &= bits - 1;
        }
    }
    return out;
}

Team Team::from_indices(std::size_t universe, const std::vector<std::uint32_t>& indices) {
    Team t(universe);
    for (std::uint32_t i : indices) {
        if (i >= universe) throw std::out_of_range("world index out of range");
        t.add(i);
    }
    return t;
}

// KripkeModel

KripkeModel::KripkeModel(std::vector<std::string> worlds,
                         std::vector<std::pair<std::string, std::string>> relation,
                         std::map<std::string, std::vector<std::string>> valuation)
    : worlds_(std::move(worlds)) {
    for (std::size_t i = 0; i < worlds_.size(); ++i) {
        if (worlds_[i].empty()) throw ModelError("world names must not be empty");
        if (!index_.emplace(worlds_[i], i).second)
            throw ModelError("duplicate world '" + worlds_[i] + "'");
    }

    successor_sets_.assign(worlds_.size(), Team(worlds_.size()));
    for (const auto& [from, to] : relation) {
        const auto f = index_.find(from);
        if (f == index_.end()) throw ModelError("relation mentions undeclared world '" + from + "'");
        const auto t = index_.find(to);
        if (t == index_.end()) throw ModelError("relation mentions undeclared world '" + to + "'");
        successor_sets_[f->second].add(t->second);
    }

    valuation_.assign(worlds_.size(), {});
    for (auto& [world, props] : valuation) {
        const auto it = index_.find(world);
        if (it == index_.end())
            throw ModelError("valuation mentions undeclared world '" + world + "'");
        std::sort(props.begin(), props.end());
        props.erase(std::unique(props.begin(), props.end()), props.end());
        for (const auto& p : props) {
            if (p.empty()) throw ModelError("proposition names must not be empty");
            auto [slot, inserted] = prop_worlds_.try_emplace(p, Team(worlds_.size()));
            slot->second.add(it->second);
        }
        valuation_[it->second] = std::move(props);
    }

    serial_ = true;
    for (const auto& s : successor_sets_)
        if (s.empty()) {
            serial_ = false;
            break;
        }
    if (worlds_.empty()) serial_ = true;
    no_worlds_ = Team(worlds_.size());
}

std::optional<std::size_t> KripkeModel::world_index(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Team KripkeModel::successors(const Team& team) const {
    Team out(size());
    for (std::uint32_t w : team.members()) out.unite(successor_sets_[w]);
    return out;
}

bool KripkeModel::has_prop(std::size_t world, const std::string& prop) const {
    const auto it = prop_worlds_.find(prop);
    return it != prop_worlds_.end() && it->second.contains(world);
}

const Team& KripkeModel::worlds_with(const std::string& prop) const {
    const auto it = prop_worlds_.find(prop);
    return it == prop_worlds_.end() ? no_worlds_ : it->second;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> KripkeModel::relation() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::size_t from = 0; from < worlds_.size(); ++from)
        for (std::uint32_t to : successor_sets_[from].members())
            out.emplace_back(static_cast<std::uint32_t>(from), to);
    return out;
}

bool KripkeModel::operator==(const KripkeModel& other) const {
    return worlds_ == other.worlds_ && successor_sets_ == other.successor_sets_ &&
           valuation_ == other.valuation_;
}

// Team / model text formats

namespace {
std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}
} // namespace

Team parse_team(const KripkeModel& model, std::string_view text) {
    std::string stripped = trim(text);
    if (stripped.size() >= 2 && stripped.front() == '{' && stripped.back() == '}')
        stripped = trim(std::string_view(stripped).substr(1, stripped.size() - 2));
    text = stripped;
    Team team(model.size());
    std::size_t start = 0;
    bool any_token = false;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            const std::string name = trim(text.substr(start, i - start));
            start = i + 1;
            if (name.empty()) {
                if (i == text.size() && !any_token) break; // wholly empty spec
                throw ModelError("empty world name in team specification");
            }
            any_token = true;
            const auto idx = model.world_index(name);
            if (!idx) throw ModelError("team mentions unknown world '" + name + "'");
            team.add(*idx);
        }
    }
    return team;
}

std::string format_team(const KripkeModel& model, const Team& team) {
    std::string out;
    for (std::uint32_t w : team.members()) {
        if (!out.empty()) out += ",";
        out += model.world_name(w);
    }
    return out;
}

KripkeModel load_model(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ModelError(std::string("model file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("worlds"))
        throw ModelError("model JSON must be an object with a \"worlds\" array");
    if (!doc["worlds"].is_array())
        throw ModelError("\"worlds\" must be an array of strings");

    std::vector<std::string> worlds;
    for (const auto& w : doc["worlds"]) {
        if (!w.is_string()) throw ModelError("\"worlds\" must be an array of strings");
        worlds.push_back(w.get<std::string>());
    }

    std::vector<std::pair<std::string, std::string>> relation;
    if (doc.contains("relation")) {
        if (!doc["relation"].is_array()) throw ModelError("\"relation\" must be an array of pairs");
        for (const auto& e : doc["relation"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
                throw ModelError("relation entries must be [\"from\",\"to\"] pairs");
            relation.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
    }

    std::map<std::string, std::vector<std::string>> valuation;
    if (doc.contains("valuation")) {
        if (!doc["valuation"].is_object())
            throw ModelError("\"valuation\" must be an object mapping worlds to proposition arrays");
        for (auto it = doc["valuation"].begin(); it != doc["valuation"].end(); ++it) {
            if (!it.value().is_array())
                throw ModelError("valuation of '" + it.key() + "' must be an array of propositions");
            std::vector<std::string> props;
            for (const auto& p : it.value()) {
                if (!p.is_string())
                    throw ModelError("valuation of '" + it.key() + "' must contain strings");
                props.push_back(p.get<std::string>());
            }
            valuation[it.key()] = std::move(props);
        }
    }

    return KripkeModel(std::move(worlds), std::move(relation), std::move(valuation));
}

std::string save_model(const KripkeModel& model) {
    nlohmann::ordered_json doc;
    doc["worlds"] = model.worlds();
    auto& rel = doc["relation"] = nlohmann::ordered_json::array();
    for (const auto& [from, to] : model.relation())
        rel.push_back({model.world_name(from), model.world_name(to)});
    auto& val = doc["valuation"] = nlohmann::ordered_json::object();
    for (std::size_t w = 0; w < model.size(); ++w)
        if (!model.valuation_of(w).empty()) val[model.world_name(w)] = model.valuation_of(w);
    return doc.dump(2) + "\n";
}

// Successor team enumeration

bool for_each_successor_team(const KripkeModel& model, const Team& team,
                             const std::function<bool(const Team&)>& visit) {
    const Team range = model.successors(team);
    const std::vector<std::uint32_t> range_worlds = range.members();
    const std::vector<std::uint32_t> members = team.members();

    // A member with no successors makes <T> empty.
    for (std::uint32_t w : members)
        if (model.successors_of(w).empty()) return false;

    // Subsets of the successor range by (cardinality, lexicographic index
    // sequence); candidates failing the covering condition are skipped.
    const std::size_t n = range_worlds.size();
    std::vector<std::size_t> pick;
    Team candidate(model.size());
    for (std::size_t k = 0; k <= n; ++k) {
        pick.resize(k);
        for (std::size_t i = 0; i < k; ++i) pick[i] = i;
        while (true) {
            candidate = Team(model.size());
            for (std::size_t i = 0; i < k; ++i) candidate.add(range_worlds[pick[i]]);
            bool covers = true;
            for (std::uint32_t w : members)
                if (!model.successors_of(w).intersects(candidate)) {
                    covers = false;
                    break;
                }
            if (covers && visit(candidate)) return true;

            // Next k-combination in lexicographic order.
            bool exhausted = true;
            for (std::size_t i = k; i-- > 0;) {
                if (pick[i] < n - k + i) {
                    ++pick[i];
                    for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
                    exhausted = false;
                    break;
                }
            }
            if (exhausted) break;
        }
    }
    return false;
}

std::vector<Team> successor_teams(const KripkeModel& model, const Team& team) {
    std::vector<Team> out;
    for_each_successor_team(model, team, [&](const Team& t) {
        out.push_back(t);
        return false;
    });
    return out;
}

KripkeModel make_random_model(std::uint64_t seed, std::size_t world_count, double edge_prob,
                              const std::vector<std::string>& props, bool force_serial) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    std::vector<std::string> worlds;
    worlds.reserve(world_count);
    for (std::size_t i = 0; i < world_count; ++i) worlds.push_back("w" + std::to_string(i));

    std::vector<std::pair<std::string, std::string>> relation;
    for (std::size_t i = 0; i < world_count; ++i) {
        bool has_edge = false;
        for (std::size_t j = 0; j < world_count; ++j)
            if (coin(rng) < edge_prob) {
                relation.emplace_back(worlds[i], worlds[j]);
                has_edge = true;
            }
        if (force_serial && !has_edge && world_count > 0) {
            std::uniform_int_distribution<std::size_t> pick(0, world_count - 1);
            relation.emplace_back(worlds[i], worlds[pick(rng)]);
        }
    }

    std::map<std::string, std::vector<std::string>> valuation;
    for (std::size_t i = 0; i < world_count; ++i) {
        std::vector<std::string> holds;
        for (const auto& p : props)
            if (coin(rng) < 0.5) holds.push_back(p);
        if (!holds.empty()) valuation[worlds[i]] = std::move(holds);
    }

    return KripkeModel(std::move(worlds), std::move(relation), std::move(valuation));
}

} // namespace teamcheck
