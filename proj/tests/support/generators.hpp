#pragma once

#include "teamcheck/formula.hpp"
#include "teamcheck/kripke.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

// Seeded random instances shared by the unit and acceptance suites.
namespace teamcheck::testgen {

inline const BooleanFunction& maj3() {
    static const BooleanFunction f(
        "maj3", 3, {false, false, false, true, false, true, true, true});
    return f;
}

enum class FormulaFlavor {
    Full,         // every connective
    NegationFree, // prop, ~prop, dep, top, and, or, maj3, dia, box
    NClone,       // atoms plus not/top/bot and all three modalities
};

inline Formula random_formula(std::mt19937_64& rng, unsigned depth,
                              const std::vector<std::string>& props, FormulaFlavor flavor) {
    auto pick_prop = [&]() -> std::string { return props[rng() % props.size()]; };
    auto dep_atom = [&] {
        std::vector<std::string> antecedents;
        std::size_t n = rng() % 3;
        for (std::size_t i = 0; i < n; ++i) antecedents.push_back(pick_prop());
        return Formula::dep(std::move(antecedents), pick_prop());
    };
    auto atom = [&]() -> Formula {
        switch (rng() % 5) {
        case 0: return Formula::prop(pick_prop());
        case 1: return Formula::neg_prop(pick_prop());
        case 2: return dep_atom();
        case 3: return Formula::apply(BooleanFunction::builtin_top(), {});
        default:
            if (flavor == FormulaFlavor::NegationFree) return Formula::prop(pick_prop());
            return Formula::apply(BooleanFunction::builtin_bot(), {});
        }
    };
    if (depth == 0) return atom();
    auto sub = [&] { return random_formula(rng, depth - 1, props, flavor); };

    switch (flavor) {
    case FormulaFlavor::Full:
        switch (rng() % 10) {
        case 0: return atom();
        case 1: return Formula::apply(BooleanFunction::builtin_not(), {sub()});
        case 2: return Formula::apply(BooleanFunction::builtin_and(), {sub(), sub()});
        case 3: return Formula::apply(BooleanFunction::builtin_or(), {sub(), sub()});
        case 4: return Formula::apply(BooleanFunction::builtin_xor(), {sub(), sub()});
        case 5: return Formula::apply(maj3(), {sub(), sub(), sub()});
        case 6: return Formula::diamond(sub());
        case 7: return Formula::box(sub());
        case 8: return Formula::box_dot(sub());
        default: return atom();
        }
    case FormulaFlavor::NegationFree:
        switch (rng() % 8) {
        case 0: return atom();
        case 1: return Formula::apply(BooleanFunction::builtin_and(), {sub(), sub()});
        case 2: return Formula::apply(BooleanFunction::builtin_or(), {sub(), sub()});
        case 3: return Formula::apply(maj3(), {sub(), sub(), sub()});
        case 4: return Formula::diamond(sub());
        case 5: return Formula::box(sub());
        case 6: return Formula::apply(BooleanFunction::builtin_or(), {sub(), sub()});
        default: return atom();
        }
    case FormulaFlavor::NClone:
        switch (rng() % 7) {
        case 0: return atom();
        case 1: return Formula::apply(BooleanFunction::builtin_not(), {sub()});
        case 2: return Formula::diamond(sub());
        case 3: return Formula::box(sub());
        case 4: return Formula::box_dot(sub());
        case 5: return Formula::apply(BooleanFunction::builtin_not(), {sub()});
        default: return atom();
        }
    }
    return atom();
}

inline Team random_team(std::mt19937_64& rng, const KripkeModel& model, double density = 0.5) {
    Team team(model.size());
    for (std::size_t w = 0; w < model.size(); ++w)
        if (std::bernoulli_distribution(density)(rng)) team.add(w);
    return team;
}

// Model with worlds w0..w(n-1): relation bit (a*n + b) is the edge a->b,
// valuation bit (j*n + w) puts props[j] at world w.
inline KripkeModel tiny_model(std::size_t n, std::uint64_t rel_bits, std::uint64_t val_bits,
                              const std::vector<std::string>& props) {
    std::vector<std::string> worlds;
    for (std::size_t i = 0; i < n; ++i) worlds.push_back("w" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> relation;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (rel_bits >> (a * n + b) & 1) relation.emplace_back(worlds[a], worlds[b]);
    std::map<std::string, std::vector<std::string>> valuation;
    for (std::size_t w = 0; w < n; ++w)
        for (std::size_t j = 0; j < props.size(); ++j)
            if (val_bits >> (j * n + w) & 1) valuation[worlds[w]].push_back(props[j]);
    return KripkeModel(std::move(worlds), std::move(relation), std::move(valuation));
}

} // namespace teamcheck::testgen
