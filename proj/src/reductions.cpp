#include "teamcheck/reductions.hpp"

#include "teamcheck/clone.hpp"
#include "teamcheck/semantics.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <sstream>

namespace teamcheck {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

int parse_int_token(const std::string& tok) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(tok, &used);
    } catch (const std::exception&) {
        throw FormatError("not an integer: '" + tok + "'");
    }
    if (used != tok.size()) throw FormatError("not an integer: '" + tok + "'");
    return value;
}

} // namespace

Digraph parse_edge_list(std::string_view text) {
    Digraph g;
    std::map<std::string, bool> seen;
    auto add_node = [&](const std::string& name) {
        if (!seen.emplace(name, true).second) return;
        g.nodes.push_back(name);
    };
    bool have_header = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::vector<std::string> tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (!have_header) {
            if (tokens.size() != 2 || tokens[0].rfind("s=", 0) != 0 ||
                tokens[1].rfind("t=", 0) != 0)
                throw FormatError("first line must be 's=<node> t=<node>' (line " +
                                  std::to_string(lineno) + ")");
            g.source = tokens[0].substr(2);
            g.target = tokens[1].substr(2);
            if (g.source.empty() || g.target.empty())
                throw FormatError("empty source or target name");
            add_node(g.source);
            add_node(g.target);
            have_header = true;
        } else if (tokens.size() == 1) {
            add_node(tokens[0]);
        } else if (tokens.size() == 2) {
            add_node(tokens[0]);
            add_node(tokens[1]);
            g.edges.emplace_back(tokens[0], tokens[1]);
        } else {
            throw FormatError("edge lines hold one or two node names (line " +
                              std::to_string(lineno) + ")");
        }
    }
    if (!have_header) throw FormatError("missing 's=<node> t=<node>' header");
    return g;
}

std::string format_edge_list(const Digraph& g) {
    std::string out = "s=" + g.source + " t=" + g.target + "\n";
    for (const std::string& node : g.nodes) out += node + "\n";
    for (const auto& [from, to] : g.edges) out += from + " " + to + "\n";
    return out;
}

namespace {

struct DimacsBody {
    int vars = 0;
    int declared_clauses = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<std::pair<char, int>> prefix;
};

DimacsBody parse_dimacs_body(std::string_view text, bool allow_prefix) {
    DimacsBody body;
    bool have_header = false;
    bool in_clauses = false;
    std::vector<int> current;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> tokens = split_ws(line);
        if (tokens.empty() || tokens[0] == "c") continue;
        if (tokens[0] == "p") {
            if (have_header) throw FormatError("duplicate 'p cnf' header");
            if (tokens.size() != 4 || tokens[1] != "cnf")
                throw FormatError("header must read 'p cnf <vars> <clauses>'");
            body.vars = parse_int_token(tokens[2]);
            body.declared_clauses = parse_int_token(tokens[3]);
            if (body.vars < 0 || body.declared_clauses < 0)
                throw FormatError("negative counts in header");
            have_header = true;
            continue;
        }
        if (!have_header) throw FormatError("data before the 'p cnf' header");
        if (tokens[0] == "e" || tokens[0] == "a") {
            if (!allow_prefix) throw FormatError("quantifier line in a plain cnf file");
            if (in_clauses) throw FormatError("quantifier block after clause data");
            if (tokens.size() < 3 || tokens.back() != "0")
                throw FormatError("quantifier block must list variables and end with 0");
            for (std::size_t i = 1; i + 1 < tokens.size(); ++i)
                body.prefix.emplace_back(tokens[0][0], parse_int_token(tokens[i]));
            continue;
        }
        in_clauses = true;
        for (const std::string& tok : tokens) {
            int lit = parse_int_token(tok);
            if (lit == 0) {
                if (current.empty()) throw FormatError("empty clause");
                body.clauses.push_back(current);
                current.clear();
            } else {
                if (std::abs(lit) > body.vars)
                    throw FormatError("literal out of range: " + tok);
                current.push_back(lit);
            }
        }
    }
    if (!have_header) throw FormatError("missing 'p cnf' header");
    if (!current.empty()) throw FormatError("clause not terminated by 0");
    if (static_cast<int>(body.clauses.size()) != body.declared_clauses)
        throw FormatError("header declares " + std::to_string(body.declared_clauses) +
                          " clauses, found " + std::to_string(body.clauses.size()));
    return body;
}

} // namespace

CnfInstance parse_dimacs(std::string_view text) {
    DimacsBody body = parse_dimacs_body(text, false);
    return CnfInstance{body.vars, std::move(body.clauses)};
}

std::string format_dimacs(const CnfInstance& f) {
    std::string out = "p cnf " + std::to_string(f.variable_count) + " " +
                      std::to_string(f.clauses.size()) + "\n";
    for (const std::vector<int>& clause : f.clauses) {
        for (int lit : clause) out += std::to_string(lit) + " ";
        out += "0\n";
    }
    return out;
}

QbfInstance parse_qdimacs(std::string_view text) {
    DimacsBody body = parse_dimacs_body(text, true);
    if (body.vars < 1) throw FormatError("a qbf instance needs at least one variable");
    if (static_cast<int>(body.prefix.size()) != body.vars)
        throw FormatError("prefix must quantify every declared variable");
    for (int i = 0; i < body.vars; ++i) {
        char want = i % 2 == 0 ? 'e' : 'a';
        if (body.prefix[i].first != want || body.prefix[i].second != i + 1)
            throw FormatError(
                "prefix must strictly alternate starting existentially, one "
                "variable per block in index order (block " +
                std::to_string(i + 1) + ")");
    }
    return QbfInstance{body.vars, CnfInstance{body.vars, std::move(body.clauses)}};
}

std::string format_qdimacs(const QbfInstance& f) {
    std::string out = "p cnf " + std::to_string(f.variable_count) + " " +
                      std::to_string(f.matrix.clauses.size()) + "\n";
    for (int i = 1; i <= f.variable_count; ++i)
        out += std::string(i % 2 == 1 ? "e " : "a ") + std::to_string(i) + " 0\n";
    for (const std::vector<int>& clause : f.matrix.clauses) {
        for (int lit : clause) out += std::to_string(lit) + " ";
        out += "0\n";
    }
    return out;
}

const char* to_string(SatMode mode) {
    switch (mode) {
    case SatMode::Sat: return "sat";
    case SatMode::UnsatAccept: return "unsat-accept";
    case SatMode::AlwaysAccept: return "always-accept";
    case SatMode::AlwaysReject: return "always-reject";
    }
    return "?";
}

SatMode sat_mode_from_string(const std::string& text) {
    if (text == "sat") return SatMode::Sat;
    if (text == "unsat-accept") return SatMode::UnsatAccept;
    if (text == "always-accept") return SatMode::AlwaysAccept;
    if (text == "always-reject") return SatMode::AlwaysReject;
    throw std::invalid_argument("unknown sat mode: " + text);
}

const char* to_string(ReductionKind kind) {
    switch (kind) {
    case ReductionKind::Reach: return "reach";
    case ReductionKind::Sat: return "sat";
    case ReductionKind::Qbf: return "qbf";
    }
    return "?";
}

ReductionKind reduction_kind_from_string(const std::string& text) {
    if (text == "reach") return ReductionKind::Reach;
    if (text == "sat") return ReductionKind::Sat;
    if (text == "qbf") return ReductionKind::Qbf;
    throw std::invalid_argument("unknown reduction kind: " + text);
}

namespace {

void validate_cnf(const CnfInstance& f) {
    if (f.variable_count < 0) throw std::invalid_argument("negative variable count");
    for (const std::vector<int>& clause : f.clauses)
        for (int lit : clause)
            if (lit == 0 || std::abs(lit) > f.variable_count)
                throw std::invalid_argument("literal out of range: " + std::to_string(lit));
}

bool cnf_value(const CnfInstance& f, std::uint32_t assignment) {
    for (const std::vector<int>& clause : f.clauses) {
        bool satisfied = false;
        for (int lit : clause) {
            bool v = assignment >> (std::abs(lit) - 1) & 1;
            if (lit > 0 ? v : !v) {
                satisfied = true;
                break;
            }
        }
        if (!satisfied) return false;
    }
    return true;
}

std::string pname(int j) { return "p" + std::to_string(j); }

} // namespace

GeneratedInstance gen_reach(const Digraph& g) {
    auto declared = [&](const std::string& name) {
        return std::find(g.nodes.begin(), g.nodes.end(), name) != g.nodes.end();
    };
    if (!declared(g.source) || !declared(g.target))
        throw std::invalid_argument("source and target must be declared nodes");

    std::vector<std::pair<std::string, std::string>> relation = g.edges;
    for (const std::string& v : g.nodes) relation.emplace_back(v, v);
    std::map<std::string, std::vector<std::string>> valuation;
    for (const std::string& v : g.nodes)
        if (v != g.target) valuation[v] = {"q"};

    KripkeModel model(g.nodes, std::move(relation), std::move(valuation));
    Team team(model.size());
    team.add(*model.world_index(g.source));

    Formula formula = Formula::dep({}, "q");
    for (std::size_t i = 1; i < g.nodes.size(); ++i) formula = Formula::box(std::move(formula));

    bool degenerate = g.source == g.target;
    return GeneratedInstance{
        std::move(model), std::move(team), std::move(formula),
        !oracle_reach(g), degenerate,
        degenerate ? "degenerate: source equals target, the formula cannot see reachability"
                   : ""};
}

GeneratedInstance gen_sat(const CnfInstance& psi, SatMode mode) {
    validate_cnf(psi);
    int m = psi.variable_count;
    int n = static_cast<int>(psi.clauses.size());

    std::vector<std::string> worlds;
    for (int i = 1; i <= n; ++i) worlds.push_back("c" + std::to_string(i));
    for (int j = 1; j <= m; ++j) worlds.push_back("s" + std::to_string(j));
    for (int j = 1; j <= m; ++j) worlds.push_back("sb" + std::to_string(j));

    std::vector<std::pair<std::string, std::string>> relation;
    for (int i = 1; i <= n; ++i)
        for (int lit : psi.clauses[i - 1])
            relation.emplace_back("c" + std::to_string(i),
                                  (lit > 0 ? "s" : "sb") + std::to_string(std::abs(lit)));

    std::map<std::string, std::vector<std::string>> valuation;
    for (int j = 1; j <= m; ++j) {
        valuation["s" + std::to_string(j)] = {pname(j), "q"};
        valuation["sb" + std::to_string(j)] = {pname(j)};
    }

    KripkeModel model(std::move(worlds), std::move(relation), std::move(valuation));
    Team team(model.size());
    for (int i = 0; i < n; ++i) team.add(static_cast<std::size_t>(i));

    std::vector<std::string> antecedents;
    for (int j = 1; j <= m; ++j) antecedents.push_back(pname(j));
    Formula guess = Formula::diamond(Formula::dep(std::move(antecedents), "q"));

    bool sat = oracle_sat(psi);
    Formula formula = guess;
    bool expected = sat;
    switch (mode) {
    case SatMode::Sat: break;
    case SatMode::UnsatAccept:
        formula = Formula::apply(BooleanFunction::builtin_not(), {std::move(guess)});
        expected = !sat;
        break;
    case SatMode::AlwaysAccept:
        formula = Formula::apply(BooleanFunction::builtin_top(), {});
        expected = true;
        break;
    case SatMode::AlwaysReject:
        formula = Formula::apply(BooleanFunction::builtin_bot(), {});
        expected = false;
        break;
    }
    return GeneratedInstance{std::move(model), std::move(team), std::move(formula), expected,
                             false, ""};
}

GeneratedInstance gen_qbf(const QbfInstance& q, QbfLayout* layout) {
    if (q.variable_count < 1) throw std::invalid_argument("qbf needs at least one variable");
    if (q.matrix.variable_count != q.variable_count)
        throw std::invalid_argument("matrix variable count differs from the prefix");
    validate_cnf(q.matrix);

    int n = q.variable_count;
    int m = static_cast<int>(q.matrix.clauses.size());
    auto delay = [](int i, int j) { return "d" + std::to_string(i) + "_" + std::to_string(j); };
    auto chain = [](bool pos, int i, int j) {
        return (pos ? "x" : "nx") + std::to_string(i) + "_" + std::to_string(j);
    };
    auto value = [](bool pos, int i) { return (pos ? "x" : "nx") + std::to_string(i); };
    auto cworld = [](int j, int k) { return "c" + std::to_string(j) + "_" + std::to_string(k); };

    std::vector<std::string> worlds;
    std::vector<std::pair<std::string, std::string>> relation;
    std::map<std::string, std::vector<std::string>> valuation;

    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) {
            worlds.push_back(delay(i, j));
            if (j < i) relation.emplace_back(delay(i, j), delay(i, j + 1));
        }
    for (int i = 1; i <= n; ++i) {
        for (bool pos : {true, false}) {
            relation.emplace_back(delay(i, i), chain(pos, i, i + 1));
            for (int j = i + 1; j <= n + 1; ++j) {
                worlds.push_back(chain(pos, i, j));
                std::vector<std::string> labels = {pname(i)};
                // q marks the "true" side; on existential (odd) variables it
                // must stay off the chain so that, on the final team, their
                // chain ends group with the unlabeled clause worlds
                if (pos && i % 2 == 0) labels.push_back("q");
                valuation[chain(pos, i, j)] = std::move(labels);
                if (j <= n) relation.emplace_back(chain(pos, i, j), chain(pos, i, j + 1));
            }
            worlds.push_back(value(pos, i));
            relation.emplace_back(chain(pos, i, n + 1), value(pos, i));
            valuation[value(pos, i)] =
                pos ? std::vector<std::string>{pname(i), "q"} : std::vector<std::string>{pname(i)};
        }
    }
    for (int j = 1; j <= m; ++j) {
        for (int k = 1; k <= n + 1; ++k) {
            worlds.push_back(cworld(j, k));
            if (k <= n) relation.emplace_back(cworld(j, k), cworld(j, k + 1));
        }
        for (int lit : q.matrix.clauses[j - 1])
            relation.emplace_back(cworld(j, n + 1), value(lit > 0, std::abs(lit)));
    }

    KripkeModel model(std::move(worlds), std::move(relation), std::move(valuation));
    Team team(model.size());
    for (int i = 1; i <= n; ++i) team.add(*model.world_index(delay(i, 1)));
    for (int j = 1; j <= m; ++j) team.add(*model.world_index(cworld(j, 1)));

    std::vector<std::string> universals;
    for (int i = 2; i <= n; i += 2) universals.push_back(pname(i));
    std::vector<std::string> all_props;
    for (int i = 1; i <= n; ++i) all_props.push_back(pname(i));

    Formula psi_prime = Formula::apply(
        BooleanFunction::builtin_xor(),
        {Formula::apply(BooleanFunction::builtin_not(),
                        {Formula::dep(std::move(universals), "q")}),
         Formula::diamond(Formula::dep(std::move(all_props), "q"))});

    Formula psi = psi_prime;
    for (int i = n; i >= 1; --i)
        psi = i % 2 == 1 ? Formula::diamond(std::move(psi)) : Formula::box_dot(std::move(psi));

    if (layout) {
        layout->pos_value.clear();
        layout->neg_value.clear();
        layout->pos_chain_end.clear();
        layout->neg_chain_end.clear();
        layout->clause_end.clear();
        for (int i = 1; i <= n; ++i) {
            layout->pos_value.push_back(value(true, i));
            layout->neg_value.push_back(value(false, i));
            layout->pos_chain_end.push_back(chain(true, i, n + 1));
            layout->neg_chain_end.push_back(chain(false, i, n + 1));
        }
        for (int j = 1; j <= m; ++j) layout->clause_end.push_back(cworld(j, n + 1));
        layout->psi_prime = psi_prime;
    }

    return GeneratedInstance{std::move(model), std::move(team), std::move(psi),
                             oracle_qbf(q), false, ""};
}

bool oracle_reach(const Digraph& g) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) index[g.nodes[i]] = i;
    auto s = index.find(g.source);
    auto t = index.find(g.target);
    if (s == index.end() || t == index.end())
        throw std::invalid_argument("source and target must be declared nodes");

    std::vector<std::vector<std::size_t>> adj(g.nodes.size());
    for (const auto& [from, to] : g.edges) {
        auto fi = index.find(from);
        auto ti = index.find(to);
        if (fi == index.end() || ti == index.end())
            throw std::invalid_argument("edge references an undeclared node");
        adj[fi->second].push_back(ti->second);
    }

    std::vector<char> visited(g.nodes.size(), 0);
    std::queue<std::size_t> frontier;
    visited[s->second] = 1;
    frontier.push(s->second);
    while (!frontier.empty()) {
        std::size_t v = frontier.front();
        frontier.pop();
        if (v == t->second) return true;
        for (std::size_t w : adj[v])
            if (!visited[w]) {
                visited[w] = 1;
                frontier.push(w);
            }
    }
    return false;
}

bool oracle_sat(const CnfInstance& f) {
    validate_cnf(f);
    if (f.variable_count > 16)
        throw ResourceLimitError("sat oracle handles at most 16 variables");
    std::uint32_t count = std::uint32_t{1} << f.variable_count;
    for (std::uint32_t a = 0; a < count; ++a)
        if (cnf_value(f, a)) return true;
    return false;
}

namespace {

bool qbf_rec(const CnfInstance& matrix, int n, int i, std::uint32_t assignment) {
    if (i > n) return cnf_value(matrix, assignment);
    bool when_true = qbf_rec(matrix, n, i + 1, assignment | (std::uint32_t{1} << (i - 1)));
    bool when_false = qbf_rec(matrix, n, i + 1, assignment);
    return i % 2 == 1 ? (when_true || when_false) : (when_true && when_false);
}

} // namespace

bool oracle_qbf(const QbfInstance& q) {
    if (q.variable_count < 1) throw std::invalid_argument("qbf needs at least one variable");
    if (q.matrix.variable_count != q.variable_count)
        throw std::invalid_argument("matrix variable count differs from the prefix");
    if (q.variable_count > 12)
        throw ResourceLimitError("qbf oracle handles at most 12 variables");
    validate_cnf(q.matrix);
    return qbf_rec(q.matrix, q.variable_count, 1, 0);
}

namespace {

// splitmix-style mixer: one well-spread 64-bit seed per instance index
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct CaseRunner {
    VerifyReport& report;
    bool inject_fault;
    bool pending_fault = false;

    explicit CaseRunner(VerifyReport& r, bool inject) : report(r), inject_fault(inject) {
        pending_fault = inject_fault;
    }

    template <typename SourceFn>
    void run(const GeneratedInstance& gi, SourceFn&& source, const char* mode,
             std::uint64_t case_seed) {
        bool got = check(gi.model, gi.team, gi.formula).value;
        if (pending_fault) {
            got = !got;
            pending_fault = false;
        }
        ++report.total;
        if (gi.degenerate) {
            ++report.degenerate;
            return;
        }
        bool expected = *gi.expected;
        ++report.matrix[expected ? 1 : 0][got ? 1 : 0];
        if (expected == got) {
            ++report.agreed;
        } else {
            report.disagreements.push_back(
                VerifyInstanceRecord{source(), mode, expected, got, case_seed});
        }
    }
};

std::vector<std::string> index_nodes(std::size_t n) {
    std::vector<std::string> nodes;
    for (std::size_t i = 0; i < n; ++i) nodes.push_back("v" + std::to_string(i));
    return nodes;
}

void exhaustive_reach(CaseRunner& runner, const VerifyBounds& bounds) {
    std::size_t cap = std::min<std::size_t>(bounds.max_nodes, 4);
    for (std::size_t n = 2; n <= cap; ++n) {
        std::vector<std::string> nodes = index_nodes(n);
        std::uint64_t masks = std::uint64_t{1} << (n * n);
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
            std::vector<std::pair<std::string, std::string>> edges;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (mask >> (a * n + b) & 1) edges.emplace_back(nodes[a], nodes[b]);
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t t = 0; t < n; ++t) {
                    if (s == t) continue;
                    Digraph g{nodes, edges, nodes[s], nodes[t]};
                    runner.run(gen_reach(g), [&] { return format_edge_list(g); }, "", 0);
                }
        }
    }
}

// nonzero ternary code over m variables: digit j of id picks x_{j+1}
// positive (1), negative (2), or absent (0)
std::vector<std::vector<int>> all_clauses_ternary(int m) {
    std::size_t total = 1;
    for (int j = 0; j < m; ++j) total *= 3;
    std::vector<std::vector<int>> clauses;
    for (std::size_t id = 1; id < total; ++id) {
        std::vector<int> clause;
        std::size_t rest = id;
        for (int j = 1; j <= m; ++j) {
            switch (rest % 3) {
            case 1: clause.push_back(j); break;
            case 2: clause.push_back(-j); break;
            default: break;
            }
            rest /= 3;
        }
        clauses.push_back(std::move(clause));
    }
    return clauses;
}

std::vector<std::vector<int>> all_clauses_width(int n, int width) {
    std::vector<std::vector<int>> clauses;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        int pop = std::popcount(mask);
        if (pop > width) continue;
        std::vector<int> vars;
        for (int j = 1; j <= n; ++j)
            if (mask >> (j - 1) & 1) vars.push_back(j);
        for (std::uint32_t signs = 0; signs < (std::uint32_t{1} << pop); ++signs) {
            std::vector<int> clause;
            for (int b = 0; b < pop; ++b)
                clause.push_back(signs >> b & 1 ? -vars[b] : vars[b]);
            clauses.push_back(std::move(clause));
        }
    }
    return clauses;
}

// all ordered tuples of 1..max_len picks from `pool`, fed to visit
void for_each_tuple(const std::vector<std::vector<int>>& pool, std::size_t max_len,
                    const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::size_t> odometer(len, 0);
        for (;;) {
            std::vector<std::vector<int>> tuple;
            tuple.reserve(len);
            for (std::size_t i : odometer) tuple.push_back(pool[i]);
            visit(tuple);
            std::size_t pos = len;
            while (pos-- > 0) {
                if (++odometer[pos] < pool.size()) break;
                odometer[pos] = 0;
                if (pos == 0) goto next_length;
            }
        }
    next_length:;
    }
}

void exhaustive_sat(CaseRunner& runner, const VerifyBounds& bounds) {
    int vcap = static_cast<int>(std::min<std::size_t>(bounds.max_vars, 3));
    std::size_t ccap = std::min<std::size_t>(bounds.max_clauses, 3);
    for (int m = 1; m <= vcap; ++m) {
        std::vector<std::vector<int>> pool = all_clauses_ternary(m);
        for_each_tuple(pool, ccap, [&](const std::vector<std::vector<int>>& clauses) {
            CnfInstance psi{m, clauses};
            for (SatMode mode : {SatMode::Sat, SatMode::UnsatAccept, SatMode::AlwaysAccept,
                                 SatMode::AlwaysReject})
                runner.run(gen_sat(psi, mode), [&] { return format_dimacs(psi); },
                           to_string(mode), 0);
        });
    }
}

void exhaustive_qbf(CaseRunner& runner, const VerifyBounds& bounds) {
    int vcap = static_cast<int>(std::min<std::size_t>(bounds.max_vars, 3));
    std::size_t ccap = std::min<std::size_t>(bounds.max_clauses, 2);
    int wcap = static_cast<int>(std::min<std::size_t>(bounds.max_clause_width, 3));
    for (int n = 1; n <= vcap; ++n) {
        std::vector<std::vector<int>> pool = all_clauses_width(n, wcap);
        for_each_tuple(pool, ccap, [&](const std::vector<std::vector<int>>& clauses) {
            QbfInstance q{n, CnfInstance{n, clauses}};
            runner.run(gen_qbf(q), [&] { return format_qdimacs(q); }, "", 0);
        });
    }
}

std::vector<int> random_clause(std::mt19937_64& rng, int vars, int max_width) {
    int width = std::uniform_int_distribution<int>(1, std::min(max_width, vars))(rng);
    std::vector<int> pool;
    for (int j = 1; j <= vars; ++j) pool.push_back(j);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> clause(pool.begin(), pool.begin() + width);
    for (int& lit : clause)
        if (rng() & 1) lit = -lit;
    return clause;
}

void random_reach(CaseRunner& runner, const VerifyBounds& bounds, std::size_t count,
                  std::uint64_t seed) {
    std::size_t max_nodes = std::max<std::size_t>(bounds.max_nodes, 2);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::uint64_t case_seed = derive_seed(seed, idx);
        std::mt19937_64 rng(case_seed);
        std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_nodes)(rng);
        double p = std::uniform_real_distribution<double>(0.08, 0.5)(rng);
        std::vector<std::string> nodes = index_nodes(n);
        std::vector<std::pair<std::string, std::string>> edges;
        std::bernoulli_distribution coin(p);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (coin(rng)) edges.emplace_back(nodes[a], nodes[b]);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::size_t s = pick(rng);
        std::size_t t = s; // sometimes kept: degenerate s = t coverage
        if (rng() % 16 != 0)
            while (t == s) t = pick(rng);
        Digraph g{std::move(nodes), std::move(edges), "", ""};
        g.source = g.nodes[s];
        g.target = g.nodes[t];
        runner.run(gen_reach(g), [&] { return format_edge_list(g); }, "", case_seed);
    }
}

void random_sat(CaseRunner& runner, const VerifyBounds& bounds, std::size_t count,
                std::uint64_t seed) {
    int max_vars = static_cast<int>(std::max<std::size_t>(bounds.max_vars, 1));
    int max_clauses = static_cast<int>(std::max<std::size_t>(bounds.max_clauses, 1));
    int max_width = static_cast<int>(std::max<std::size_t>(bounds.max_clause_width, 1));
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::uint64_t case_seed = derive_seed(seed, idx);
        std::mt19937_64 rng(case_seed);
        int m = std::uniform_int_distribution<int>(1, max_vars)(rng);
        int c = std::uniform_int_distribution<int>(1, max_clauses)(rng);
        CnfInstance psi{m, {}};
        for (int j = 0; j < c; ++j) psi.clauses.push_back(random_clause(rng, m, max_width));
        for (SatMode mode :
             {SatMode::Sat, SatMode::UnsatAccept, SatMode::AlwaysAccept, SatMode::AlwaysReject})
            runner.run(gen_sat(psi, mode), [&] { return format_dimacs(psi); }, to_string(mode),
                       case_seed);
    }
}

void random_qbf(CaseRunner& runner, const VerifyBounds& bounds, std::size_t count,
                std::uint64_t seed) {
    int max_vars = static_cast<int>(std::max<std::size_t>(bounds.max_vars, 1));
    int max_clauses = static_cast<int>(std::max<std::size_t>(bounds.max_clauses, 1));
    int max_width = static_cast<int>(std::max<std::size_t>(bounds.max_clause_width, 1));
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::uint64_t case_seed = derive_seed(seed, idx);
        std::mt19937_64 rng(case_seed);
        int n = std::uniform_int_distribution<int>(1, max_vars)(rng);
        int c = std::uniform_int_distribution<int>(1, max_clauses)(rng);
        QbfInstance q{n, CnfInstance{n, {}}};
        for (int j = 0; j < c; ++j) q.matrix.clauses.push_back(random_clause(rng, n, max_width));
        runner.run(gen_qbf(q), [&] { return format_qdimacs(q); }, "", case_seed);
    }
}

} // namespace

VerifyReport verify_reduction(ReductionKind kind, const VerifyOptions& options) {
    VerifyReport report;
    report.kind = kind;
    report.seed = options.seed;
    report.exhaustive = options.exhaustive;
    CaseRunner runner(report, options.inject_fault);
    switch (kind) {
    case ReductionKind::Reach:
        options.exhaustive ? exhaustive_reach(runner, options.bounds)
                           : random_reach(runner, options.bounds, options.count, options.seed);
        break;
    case ReductionKind::Sat:
        options.exhaustive ? exhaustive_sat(runner, options.bounds)
                           : random_sat(runner, options.bounds, options.count, options.seed);
        break;
    case ReductionKind::Qbf:
        options.exhaustive ? exhaustive_qbf(runner, options.bounds)
                           : random_qbf(runner, options.bounds, options.count, options.seed);
        break;
    }
    return report;
}

std::string verify_report_to_json(const VerifyReport& report) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(report.kind);
    j["seed"] = report.seed;
    j["exhaustive"] = report.exhaustive;
    j["total"] = report.total;
    j["agreed"] = report.agreed;
    j["degenerate_excluded"] = report.degenerate;
    j["matrix"] = {{"ff", report.matrix[0][0]},
                   {"ft", report.matrix[0][1]},
                   {"tf", report.matrix[1][0]},
                   {"tt", report.matrix[1][1]}};
    j["all_agree"] = report.all_agree();
    nlohmann::ordered_json disagreements = nlohmann::ordered_json::array();
    for (const VerifyInstanceRecord& rec : report.disagreements) {
        nlohmann::ordered_json r;
        r["source"] = rec.source;
        if (!rec.mode.empty()) r["mode"] = rec.mode;
        r["expected"] = rec.expected;
        r["got"] = rec.got;
        r["seed"] = rec.seed;
        disagreements.push_back(std::move(r));
    }
    j["disagreements"] = std::move(disagreements);
    return j.dump(2) + "\n";
}

} // namespace teamcheck
