#pragma once

#include "teamcheck/boolean_function.hpp"
#include "teamcheck/clone.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace teamcheck {

enum class FormulaKind { Prop, NegProp, Dep, Apply, Diamond, Box, BoxDot };

// Immutable modal-team-logic formula. Handles share structure; all factory
// functions validate their arguments (dep needs a consequent, apply checks
// the function arity).
class Formula {
public:
    static Formula prop(std::string name);
    static Formula neg_prop(std::string name);
    static Formula dep(std::vector<std::string> antecedents, std::string consequent);
    static Formula apply(BooleanFunction f, std::vector<Formula> args);
    static Formula diamond(Formula f);
    static Formula box(Formula f);
    static Formula box_dot(Formula f);

    FormulaKind kind() const { return node_->kind; }

    // Prop / NegProp
    const std::string& prop_name() const;
    // Dep
    const std::vector<std::string>& dep_antecedents() const;
    const std::string& dep_consequent() const;
    // Apply
    const BooleanFunction& function() const;
    const std::vector<Formula>& args() const;
    // Diamond / Box / BoxDot
    const Formula& child() const;

    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }

    std::size_t node_count() const;
    unsigned depth() const;

    // All proposition names mentioned (including dependence-atom arguments),
    // sorted and deduplicated.
    std::vector<std::string> propositions() const;

private:
    struct Node {
        FormulaKind kind;
        std::string name;                       // Prop/NegProp, Dep consequent
        std::vector<std::string> antecedents;   // Dep
        std::optional<BooleanFunction> fn;      // Apply
        std::vector<Formula> children;          // Apply args / modality child
    };
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

// Concrete syntax:
//
//   phi ::= ident | '~' ident | 'dep(' ident (',' ident)* ')'
//         | 'box' phi | 'dia' phi | 'boxdot' phi
//         | fname '(' phi (',' phi)* ')' | '(' phi ')'
//
// with infix sugar '&' (and), '^' (xor), '|' (or) and prefix '!' (not);
// precedence ! > box/dia/boxdot > & > ^ > |, infix left-associative.
// '~p' is the atomic negation of a proposition, '!phi' is classical negation.
// A bare identifier naming a registered nullary function parses as that
// constant; otherwise it is a proposition.
Formula parse_formula(std::string_view text,
                      const FunctionRegistry& registry = FunctionRegistry::builtins());

// Canonical text form; parse_formula(render_formula(f)) == f for any f whose
// functions are in the registry used to reparse.
std::string render_formula(const Formula& f);

struct FragmentSignature {
    CloneLabel clone = CloneLabel::ID;
    bool uses_box = false;
    bool uses_diamond = false;
    bool uses_dep = false;

    bool operator==(const FragmentSignature&) const = default;
};

// Clone label of the connectives appearing in f, joined with N when a boxdot
// occurs (its hidden classical negation), plus modality/dep usage flags.
// Boxdot sets both uses_box and uses_diamond.
FragmentSignature fragment_signature(const Formula& f);

// Model-checking complexity of the fragment, as a fixed label string.
std::string fragment_complexity(const FragmentSignature& sig);

// No classical-negation-capable connective (every applied function is
// monotone) and no boxdot. Formulas passing this are downward closed.
bool is_downward_closed_syntactic(const Formula& f);

// For formulas whose connectives stay within clone N and are all unary:
// returns an equivalent formula that is an optional classical negation over
// a chain of modalities ending in a literal, dependence atom, or constant.
// Inner negations cancel or float to the root (exactly, via the dualities
// dia !x == !boxdot x, boxdot !x == !dia x, box !x == !box x).
//
// When rewrite_box_dot is true (the default, matching the normal form used
// by the N-clone fragment analysis), every boxdot whose operand is
// syntactically downward closed is then replaced by box. That last rewrite
// is only an equivalence when no reachable team can contain a dead-end
// world, e.g. on serial models; pass rewrite_box_dot = false to keep the
// chain exact on arbitrary models.
Formula normalize_n_clone(const Formula& f, bool rewrite_box_dot = true);

} // namespace teamcheck
