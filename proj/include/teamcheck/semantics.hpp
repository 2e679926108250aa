#pragma once

#include "teamcheck/clone.hpp"
#include "teamcheck/formula.hpp"
#include "teamcheck/kripke.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace teamcheck {

enum class DispatchPath { Reference, BoxFast, NNormal, Generic };

// "reference" | "box_fast" | "n_normal" | "generic"
const char* to_string(DispatchPath path);

// Counters are best effort and legitimately differ between dispatch paths;
// only `value` is part of the semantic contract.
struct EvalStats {
    std::size_t successor_team_sets = 0;   // successor-team enumerations started
    std::size_t successor_teams_tried = 0; // candidate teams yielded by them
    std::size_t nodes_visited = 0;         // (subformula, team) evaluations
    std::size_t max_depth = 0;             // deepest recursion reached
    DispatchPath path = DispatchPath::Reference;

    std::map<std::string, std::string> as_map() const;
};

struct EvalResult {
    bool value = false;
    EvalStats stats;
};

// max_steps bounds nodes_visited + successor_teams_tried; 0 means unlimited.
// Exceeding it aborts evaluation with ResourceLimitError.
struct EvalLimits {
    std::size_t max_steps = 0;
};

// Brute-force evaluator by structural recursion on the team semantics:
//   p        every world of T is labeled p
//   ~p       no world of T is labeled p
//   dep(...) worlds of T agreeing on the antecedents agree on the consequent
//   f(...)   f applied to the children's truth values on the same T
//   dia phi  some covering successor team of T satisfies phi
//   box phi  phi holds on the successor image of T
//   boxdot   every covering successor team satisfies phi (= !dia !phi)
// Diamond searches the ordered successor-team enumeration and stops at the
// first witness; boxdot stops at the first violation.
EvalResult check_reference(const KripkeModel& model, const Team& team, const Formula& phi,
                           const EvalLimits& limits = {});

// Same value as check_reference on every input. Dispatch:
//   box_fast  no dia and no boxdot: each box steps to the successor image,
//             no successor-team enumeration at all
//   n_normal  connectives within clone N and all of arity <= 1: rewrite to a
//             possibly-negated modality chain over one atom, then evaluate
//             the chain with one search layer per dia
//   generic   recursive evaluation with short-circuiting over the ordered
//             successor-team enumeration and lazy connective arguments
EvalResult check(const KripkeModel& model, const Team& team, const Formula& phi,
                 const EvalLimits& limits = {});

// Dependence atom in isolation: groups team members by their antecedent
// pattern and requires the consequent to be constant within each group. An
// empty antecedent list requires the consequent to be constant on the team.
bool eval_dep(const KripkeModel& model, const Team& team,
              const std::vector<std::string>& antecedents, const std::string& consequent);

struct DownwardClosureCounterexample {
    KripkeModel model;
    Team team;    // satisfies the formula
    Team subteam; // does not (team with one world removed)
};

struct DownwardClosureResult {
    bool holds = true;
    std::optional<DownwardClosureCounterexample> counterexample;
    std::size_t models_checked = 0;
};

// Exhaustively checks that satisfaction is preserved under subteams, over
// every model with 1..max_worlds worlds and every valuation over the
// formula's propositions. Checking one-world removals suffices: downward
// closure violations compose along chains in the subset lattice.
//
// The search space is sum over n of 2^(n*n + n*k) models times 2^n teams
// (k = proposition count); if that exceeds eval_budget, or max_worlds > 6,
// the call refuses with ResourceLimitError. max_worlds <= 4 with at most
// two propositions is the practical range.
DownwardClosureResult is_downward_closed_semantic(const Formula& phi, std::size_t max_worlds,
                                                  std::size_t eval_budget = std::size_t{1}
                                                                            << 26);

} // namespace teamcheck
