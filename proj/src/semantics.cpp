#include "teamcheck/semantics.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>

namespace teamcheck {

const char* to_string(DispatchPath path) {
    switch (path) {
    case DispatchPath::Reference: return "reference";
    case DispatchPath::BoxFast: return "box_fast";
    case DispatchPath::NNormal: return "n_normal";
    case DispatchPath::Generic: return "generic";
    }
    return "?";
}

std::map<std::string, std::string> EvalStats::as_map() const {
    return {
        {"successor_team_sets", std::to_string(successor_team_sets)},
        {"successor_teams_tried", std::to_string(successor_teams_tried)},
        {"nodes_visited", std::to_string(nodes_visited)},
        {"max_depth", std::to_string(max_depth)},
        {"path", to_string(path)},
    };
}

bool eval_dep(const KripkeModel& model, const Team& team,
              const std::vector<std::string>& antecedents, const std::string& consequent) {
    std::map<std::vector<bool>, bool> groups;
    std::vector<bool> key(antecedents.size());
    for (std::uint32_t w : team.members()) {
        for (std::size_t i = 0; i < antecedents.size(); ++i)
            key[i] = model.has_prop(w, antecedents[i]);
        bool q = model.has_prop(w, consequent);
        auto [it, inserted] = groups.emplace(key, q);
        if (!inserted && it->second != q) return false;
    }
    return true;
}

namespace {

struct StepGuard {
    EvalStats& stats;
    std::size_t max_steps; // 0 = unlimited

    void enter_node(std::size_t depth) {
        ++stats.nodes_visited;
        if (depth > stats.max_depth) stats.max_depth = depth;
        enforce();
    }
    void count_candidate() {
        ++stats.successor_teams_tried;
        enforce();
    }
    void enforce() const {
        if (max_steps && stats.nodes_visited + stats.successor_teams_tried > max_steps)
            throw ResourceLimitError("evaluation step budget exceeded");
    }
};

bool prop_holds(const KripkeModel& m, const Team& t, const std::string& name) {
    return t.subset_of(m.worlds_with(name));
}

bool neg_prop_holds(const KripkeModel& m, const Team& t, const std::string& name) {
    return !t.intersects(m.worlds_with(name));
}

bool has_dead_end_member(const KripkeModel& m, const Team& t) {
    for (std::size_t w = 0; w < m.size(); ++w)
        if (t.contains(w) && m.successors_of(w).empty()) return true;
    return false;
}

// Shared by the reference and generic paths; they differ only in whether
// connective arguments are evaluated lazily.
struct Walker {
    const KripkeModel& m;
    StepGuard& guard;
    bool lazy_args;

    bool eval(const Team& t, const Formula& f, std::size_t depth) {
        guard.enter_node(depth);
        switch (f.kind()) {
        case FormulaKind::Prop:
            return prop_holds(m, t, f.prop_name());
        case FormulaKind::NegProp:
            return neg_prop_holds(m, t, f.prop_name());
        case FormulaKind::Dep:
            return eval_dep(m, t, f.dep_antecedents(), f.dep_consequent());
        case FormulaKind::Apply:
            return lazy_args ? eval_apply_lazy(t, f, depth) : eval_apply_eager(t, f, depth);
        case FormulaKind::Diamond: {
            ++guard.stats.successor_team_sets;
            bool found = false;
            for_each_successor_team(m, t, [&](const Team& next) {
                guard.count_candidate();
                if (eval(next, f.child(), depth + 1)) {
                    found = true;
                    return true;
                }
                return false;
            });
            return found;
        }
        case FormulaKind::Box:
            return eval(m.successors(t), f.child(), depth + 1);
        case FormulaKind::BoxDot: {
            ++guard.stats.successor_team_sets;
            bool all = true;
            for_each_successor_team(m, t, [&](const Team& next) {
                guard.count_candidate();
                if (!eval(next, f.child(), depth + 1)) {
                    all = false;
                    return true;
                }
                return false;
            });
            return all;
        }
        }
        throw std::logic_error("unhandled formula kind");
    }

    bool eval_apply_eager(const Team& t, const Formula& f, std::size_t depth) {
        std::size_t row = 0;
        const std::vector<Formula>& args = f.args();
        for (std::size_t i = 0; i < args.size(); ++i)
            row |= std::size_t{eval(t, args[i], depth + 1)} << i;
        return f.function().table()[row];
    }

    // Evaluate arguments left to right, stopping as soon as the remaining
    // ones cannot change the function value.
    bool eval_apply_lazy(const Team& t, const Formula& f, std::size_t depth) {
        const std::vector<bool>& table = f.function().table();
        unsigned arity = f.function().arity();
        std::size_t row = 0;
        for (std::size_t done = 0;; ++done) {
            bool first = table[row];
            bool forced = true;
            for (std::size_t c = 1; c < (std::size_t{1} << (arity - done)); ++c)
                if (table[row + (c << done)] != first) {
                    forced = false;
                    break;
                }
            if (forced) return first;
            row |= std::size_t{eval(t, f.args()[done], depth + 1)} << done;
        }
    }
};

// Box-only formulas: every modality maps the team deterministically to its
// successor image, so plain recursion touches each subformula once.
struct BoxFastWalker {
    const KripkeModel& m;
    StepGuard& guard;

    bool eval(const Team& t, const Formula& f, std::size_t depth) {
        guard.enter_node(depth);
        switch (f.kind()) {
        case FormulaKind::Prop:
            return prop_holds(m, t, f.prop_name());
        case FormulaKind::NegProp:
            return neg_prop_holds(m, t, f.prop_name());
        case FormulaKind::Dep:
            return eval_dep(m, t, f.dep_antecedents(), f.dep_consequent());
        case FormulaKind::Apply: {
            std::size_t row = 0;
            const std::vector<Formula>& args = f.args();
            for (std::size_t i = 0; i < args.size(); ++i)
                row |= std::size_t{eval(t, args[i], depth + 1)} << i;
            return f.function().table()[row];
        }
        case FormulaKind::Box:
            return eval(m.successors(t), f.child(), depth + 1);
        case FormulaKind::Diamond:
        case FormulaKind::BoxDot:
            break;
        }
        throw std::logic_error("box_fast dispatched on a formula with dia or boxdot");
    }
};

// The normalized N-clone shape: an optional classical negation over a chain
// of modalities ending in one atom or constant.
struct NormalChain {
    bool negated = false;
    std::vector<FormulaKind> mods;      // outermost first
    std::vector<bool> boxdot_below;     // boxdot anywhere after position i
    const Formula* leaf = nullptr;
};

NormalChain split_chain(const Formula& normalized) {
    NormalChain chain;
    const Formula* cur = &normalized;
    if (cur->kind() == FormulaKind::Apply && cur->function().arity() == 1) {
        // the normal form keeps at most one connective: a root negation
        chain.negated = true;
        cur = &cur->args()[0];
    }
    while (cur->kind() == FormulaKind::Diamond || cur->kind() == FormulaKind::Box ||
           cur->kind() == FormulaKind::BoxDot) {
        chain.mods.push_back(cur->kind());
        cur = &cur->child();
    }
    chain.leaf = cur;
    chain.boxdot_below.assign(chain.mods.size(), false);
    bool seen = false;
    for (std::size_t i = chain.mods.size(); i-- > 0;) {
        chain.boxdot_below[i] = seen;
        if (chain.mods[i] == FormulaKind::BoxDot) seen = true;
    }
    return chain;
}

struct ChainWalker {
    const KripkeModel& m;
    StepGuard& guard;
    const NormalChain& chain;

    bool leaf_value(const Team& t) {
        const Formula& f = *chain.leaf;
        switch (f.kind()) {
        case FormulaKind::Prop:
            return prop_holds(m, t, f.prop_name());
        case FormulaKind::NegProp:
            return neg_prop_holds(m, t, f.prop_name());
        case FormulaKind::Dep:
            return eval_dep(m, t, f.dep_antecedents(), f.dep_consequent());
        case FormulaKind::Apply:
            return f.function().table()[0]; // nullary constant
        default:
            throw std::logic_error("normalized chain has a non-atomic leaf");
        }
    }

    bool eval(const Team& t, std::size_t i, std::size_t depth) {
        guard.enter_node(depth);
        if (i == chain.mods.size()) return leaf_value(t);
        switch (chain.mods[i]) {
        case FormulaKind::Box:
            return eval(m.successors(t), i + 1, depth + 1);
        case FormulaKind::Diamond: {
            ++guard.stats.successor_team_sets;
            bool found = false;
            for_each_successor_team(m, t, [&](const Team& next) {
                guard.count_candidate();
                if (eval(next, i + 1, depth + 1)) {
                    found = true;
                    return true;
                }
                return false;
            });
            return found;
        }
        case FormulaKind::BoxDot: {
            // A member without successors leaves no covering team to refute.
            if (has_dead_end_member(m, t)) return true;
            if (!chain.boxdot_below[i])
                // The rest of the chain is negation-free and boxdot-free,
                // hence downward closed, and the successor image is the
                // largest covering team: checking it alone is exact. With
                // another boxdot below, downward closure can fail, so fall
                // through to full enumeration.
                return eval(m.successors(t), i + 1, depth + 1);
            ++guard.stats.successor_team_sets;
            bool all = true;
            for_each_successor_team(m, t, [&](const Team& next) {
                guard.count_candidate();
                if (!eval(next, i + 1, depth + 1)) {
                    all = false;
                    return true;
                }
                return false;
            });
            return all;
        }
        default:
            throw std::logic_error("non-modality in normalized chain");
        }
    }
};

bool within_n_clone_shape(const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::Apply: {
        if (f.function().arity() > 1) return false;
        for (const Formula& arg : f.args())
            if (!within_n_clone_shape(arg)) return false;
        return true;
    }
    case FormulaKind::Diamond:
    case FormulaKind::Box:
    case FormulaKind::BoxDot:
        return within_n_clone_shape(f.child());
    default:
        return true;
    }
}

} // namespace

EvalResult check_reference(const KripkeModel& model, const Team& team, const Formula& phi,
                           const EvalLimits& limits) {
    EvalResult result;
    result.stats.path = DispatchPath::Reference;
    StepGuard guard{result.stats, limits.max_steps};
    Walker walker{model, guard, /*lazy_args=*/false};
    result.value = walker.eval(team, phi, 0);
    return result;
}

EvalResult check(const KripkeModel& model, const Team& team, const Formula& phi,
                 const EvalLimits& limits) {
    FragmentSignature sig = fragment_signature(phi);
    EvalResult result;
    StepGuard guard{result.stats, limits.max_steps};

    if (!sig.uses_diamond) { // neither dia nor boxdot occurs
        result.stats.path = DispatchPath::BoxFast;
        BoxFastWalker walker{model, guard};
        result.value = walker.eval(team, phi, 0);
        return result;
    }
    if (clone_leq(sig.clone, CloneLabel::N) && within_n_clone_shape(phi)) {
        result.stats.path = DispatchPath::NNormal;
        // The boxdot->box rewrite is an equivalence only on serial models;
        // elsewhere the chain keeps boxdot and handles it exactly.
        Formula normalized = normalize_n_clone(phi, /*rewrite_box_dot=*/model.serial());
        NormalChain chain = split_chain(normalized);
        ChainWalker walker{model, guard, chain};
        bool value = walker.eval(team, 0, 0);
        result.value = chain.negated ? !value : value;
        return result;
    }
    result.stats.path = DispatchPath::Generic;
    Walker walker{model, guard, /*lazy_args=*/true};
    result.value = walker.eval(team, phi, 0);
    return result;
}

namespace {

// Compact evaluator for the exhaustive downward-closure sweep: worlds are
// bit positions, teams are masks, and (subformula, team) values are memoized
// per model.
struct TinyNode {
    FormulaKind kind;
    int prop = -1;
    std::vector<int> antecedents;
    int consequent = -1;
    const BooleanFunction* fn = nullptr;
    std::vector<std::size_t> kids;
};

std::size_t compile_tiny(const Formula& f, const std::map<std::string, int>& prop_ids,
                         std::vector<TinyNode>& out) {
    TinyNode node;
    node.kind = f.kind();
    switch (f.kind()) {
    case FormulaKind::Prop:
    case FormulaKind::NegProp:
        node.prop = prop_ids.at(f.prop_name());
        break;
    case FormulaKind::Dep:
        for (const std::string& a : f.dep_antecedents())
            node.antecedents.push_back(prop_ids.at(a));
        node.consequent = prop_ids.at(f.dep_consequent());
        break;
    case FormulaKind::Apply:
        node.fn = &f.function();
        for (const Formula& arg : f.args()) node.kids.push_back(compile_tiny(arg, prop_ids, out));
        break;
    case FormulaKind::Diamond:
    case FormulaKind::Box:
    case FormulaKind::BoxDot:
        node.kids.push_back(compile_tiny(f.child(), prop_ids, out));
        break;
    }
    out.push_back(std::move(node));
    return out.size() - 1;
}

struct TinyModel {
    unsigned n = 0;
    std::array<std::uint32_t, 6> succ{};
    std::array<std::uint32_t, 6> prop{};
};

struct TinyEval {
    const TinyModel& m;
    const std::vector<TinyNode>& nodes;
    // per node: bit t of known marks team mask t as computed, bit t of value
    // holds the result (teams fit in 2^6 masks)
    std::vector<std::array<std::uint64_t, 2>>& memo;

    bool covers(std::uint32_t team, std::uint32_t sub) const {
        for (unsigned w = 0; w < m.n; ++w)
            if ((team >> w & 1) && (m.succ[w] & sub) == 0) return false;
        return true;
    }

    std::uint32_t image(std::uint32_t team) const {
        std::uint32_t img = 0;
        for (unsigned w = 0; w < m.n; ++w)
            if (team >> w & 1) img |= m.succ[w];
        return img;
    }

    bool eval(std::size_t idx, std::uint32_t team) {
        auto& [known, value] = memo[idx];
        if (known >> team & 1) return value >> team & 1;
        bool v = compute(idx, team);
        known |= std::uint64_t{1} << team;
        if (v) value |= std::uint64_t{1} << team;
        return v;
    }

    bool compute(std::size_t idx, std::uint32_t team) {
        const TinyNode& nd = nodes[idx];
        switch (nd.kind) {
        case FormulaKind::Prop:
            return (team & ~m.prop[nd.prop]) == 0;
        case FormulaKind::NegProp:
            return (team & m.prop[nd.prop]) == 0;
        case FormulaKind::Dep: {
            for (unsigned w = 0; w < m.n; ++w) {
                if (!(team >> w & 1)) continue;
                for (unsigned v = 0; v < w; ++v) {
                    if (!(team >> v & 1)) continue;
                    bool agree = true;
                    for (int a : nd.antecedents)
                        if ((m.prop[a] >> w & 1) != (m.prop[a] >> v & 1)) {
                            agree = false;
                            break;
                        }
                    if (agree &&
                        (m.prop[nd.consequent] >> w & 1) != (m.prop[nd.consequent] >> v & 1))
                        return false;
                }
            }
            return true;
        }
        case FormulaKind::Apply: {
            std::size_t row = 0;
            for (std::size_t i = 0; i < nd.kids.size(); ++i)
                row |= std::size_t{eval(nd.kids[i], team)} << i;
            return nd.fn->table()[row];
        }
        case FormulaKind::Box:
            return eval(nd.kids[0], image(team));
        case FormulaKind::Diamond: {
            std::uint32_t img = image(team);
            for (std::uint32_t sub = img;; sub = (sub - 1) & img) {
                if (covers(team, sub) && eval(nd.kids[0], sub)) return true;
                if (sub == 0) return false;
            }
        }
        case FormulaKind::BoxDot: {
            std::uint32_t img = image(team);
            for (std::uint32_t sub = img;; sub = (sub - 1) & img) {
                if (covers(team, sub) && !eval(nd.kids[0], sub)) return false;
                if (sub == 0) return true;
            }
        }
        }
        throw std::logic_error("unhandled formula kind");
    }
};

KripkeModel realize_tiny(const TinyModel& m, const std::vector<std::string>& props) {
    std::vector<std::string> worlds;
    for (unsigned w = 0; w < m.n; ++w) worlds.push_back("w" + std::to_string(w));
    std::vector<std::pair<std::string, std::string>> relation;
    for (unsigned w = 0; w < m.n; ++w)
        for (unsigned v = 0; v < m.n; ++v)
            if (m.succ[w] >> v & 1) relation.emplace_back(worlds[w], worlds[v]);
    std::map<std::string, std::vector<std::string>> valuation;
    for (unsigned w = 0; w < m.n; ++w) {
        std::vector<std::string> labels;
        for (std::size_t j = 0; j < props.size(); ++j)
            if (m.prop[j] >> w & 1) labels.push_back(props[j]);
        if (!labels.empty()) valuation[worlds[w]] = std::move(labels);
    }
    return KripkeModel(std::move(worlds), std::move(relation), std::move(valuation));
}

Team team_from_mask(std::uint32_t mask, std::size_t universe) {
    Team t(universe);
    for (unsigned w = 0; w < universe; ++w)
        if (mask >> w & 1) t.add(w);
    return t;
}

} // namespace

DownwardClosureResult is_downward_closed_semantic(const Formula& phi, std::size_t max_worlds,
                                                  std::size_t eval_budget) {
    if (max_worlds == 0 || max_worlds > 6)
        throw ResourceLimitError("downward-closure sweep supports 1..6 worlds");
    std::vector<std::string> props = phi.propositions();
    std::size_t k = props.size();

    std::size_t cost = 0;
    for (std::size_t n = 1; n <= max_worlds; ++n) {
        std::size_t bits = n * n + n * k + n; // relations x valuations x teams
        if (bits >= 63 || (std::size_t{1} << bits) > eval_budget - cost)
            throw ResourceLimitError("downward-closure sweep exceeds the evaluation budget");
        cost += std::size_t{1} << bits;
    }

    std::map<std::string, int> prop_ids;
    for (std::size_t j = 0; j < k; ++j) prop_ids[props[j]] = static_cast<int>(j);
    std::vector<TinyNode> nodes;
    std::size_t root = compile_tiny(phi, prop_ids, nodes);

    std::vector<std::array<std::uint64_t, 2>> memo(nodes.size());
    DownwardClosureResult result;

    for (std::size_t n = 1; n <= max_worlds; ++n) {
        std::uint64_t rel_count = std::uint64_t{1} << (n * n);
        std::uint64_t val_count = std::uint64_t{1} << (n * k);
        std::uint32_t team_count = std::uint32_t{1} << n;
        for (std::uint64_t rel = 0; rel < rel_count; ++rel) {
            TinyModel m;
            m.n = static_cast<unsigned>(n);
            for (unsigned w = 0; w < n; ++w)
                m.succ[w] = static_cast<std::uint32_t>(rel >> (w * n)) & (team_count - 1);
            for (std::uint64_t val = 0; val < val_count; ++val) {
                for (std::size_t j = 0; j < k; ++j)
                    m.prop[j] = static_cast<std::uint32_t>(val >> (j * n)) & (team_count - 1);
                ++result.models_checked;

                for (auto& slot : memo) slot = {0, 0};
                TinyEval ev{m, nodes, memo};
                std::uint64_t sat = 0;
                for (std::uint32_t team = 0; team < team_count; ++team)
                    if (ev.eval(root, team)) sat |= std::uint64_t{1} << team;

                for (std::uint32_t team = 1; team < team_count; ++team) {
                    if (!(sat >> team & 1)) continue;
                    for (unsigned w = 0; w < n; ++w) {
                        if (!(team >> w & 1)) continue;
                        std::uint32_t sub = team & ~(std::uint32_t{1} << w);
                        if (sat >> sub & 1) continue;
                        result.holds = false;
                        result.counterexample = DownwardClosureCounterexample{
                            realize_tiny(m, props), team_from_mask(team, n),
                            team_from_mask(sub, n)};
                        return result;
                    }
                }
            }
        }
    }
    return result;
}

} // namespace teamcheck
