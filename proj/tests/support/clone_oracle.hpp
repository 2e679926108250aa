#pragma once

#include "teamcheck/clone.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

// Ground-truth clone labeling: generate the full term closure of a base and
// match it against the closures of the seven lattice members. With both
// constants free there are exactly seven possibilities, so exactly one
// reference set matches.
namespace teamcheck::testgen {

using TableSet = std::set<std::pair<unsigned, std::vector<bool>>>;

inline TableSet closure_tables(const std::vector<BooleanFunction>& base, unsigned max_arity) {
    TableSet set;
    for (const BooleanFunction& f : closure_oracle(base, max_arity))
        set.insert({f.arity(), f.table()});
    return set;
}

inline CloneLabel closure_label(const std::vector<BooleanFunction>& base, unsigned max_arity) {
    static std::map<unsigned, std::vector<std::pair<CloneLabel, TableSet>>> cache;
    auto it = cache.find(max_arity);
    if (it == cache.end()) {
        const auto& a = BooleanFunction::builtin_and();
        const auto& o = BooleanFunction::builtin_or();
        const auto& n = BooleanFunction::builtin_not();
        const auto& x = BooleanFunction::builtin_xor();
        std::vector<std::pair<CloneLabel, TableSet>> refs = {
            {CloneLabel::ID, closure_tables({}, max_arity)},
            {CloneLabel::E, closure_tables({a}, max_arity)},
            {CloneLabel::V, closure_tables({o}, max_arity)},
            {CloneLabel::M, closure_tables({a, o}, max_arity)},
            {CloneLabel::N, closure_tables({n}, max_arity)},
            {CloneLabel::L, closure_tables({x}, max_arity)},
            {CloneLabel::BF, closure_tables({a, n}, max_arity)},
        };
        it = cache.emplace(max_arity, std::move(refs)).first;
    }
    TableSet got = closure_tables(base, max_arity);
    for (const auto& [label, tables] : it->second)
        if (tables == got) return label;
    throw std::logic_error("closure matches no reference clone");
}

} // namespace teamcheck::testgen
