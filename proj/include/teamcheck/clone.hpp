#pragma once

#include "teamcheck/boolean_function.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace teamcheck {

// The seven clones that matter when both constants are available for free,
// ordered by the lattice
//
//          BF
//         /  \
//        M    L
//       / \   |
//      E   V  N
//       \  | /
//         ID
//
// ID < E < M, ID < V < M, ID < N < L, M < BF, L < BF.
enum class CloneLabel { ID, E, V, M, N, L, BF };

const char* to_string(CloneLabel label);
CloneLabel clone_label_from_string(const std::string& text);

bool clone_leq(CloneLabel a, CloneLabel b);
CloneLabel clone_join(CloneLabel a, CloneLabel b);

// Least clone label containing f, decided structurally on the truth table:
// at most one essential argument gives ID (constants, projections) or N
// (negated projections); otherwise affine functions land in L, monotone ones
// in E/V/M depending on whether they are a pure conjunction/disjunction of
// their essential arguments, and everything else in BF.
CloneLabel classify_function(const BooleanFunction& f);

// Join of classify_function over the set; ID for the empty set.
CloneLabel classify_clone(const std::vector<BooleanFunction>& base);

struct ClosureLimits {
    std::size_t max_functions = 100000;          // cap on functions per arity
    std::uint64_t max_compositions = 50000000;   // cap on tuples tried per pass
};

struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Independent ground truth for the classifier: all functions of arity
// <= max_arity buildable from `base`, both constants, and projections,
// closed under composition. Functions of arity k are exactly the k-variable
// term functions over the base, so the fixpoint seeds projections/constants
// at each arity and applies base functions bottom-up. Results carry
// synthesized names ("f<arity>_<table bits as hex>").
std::vector<BooleanFunction> closure_oracle(const std::vector<BooleanFunction>& base,
                                            unsigned max_arity,
                                            const ClosureLimits& limits = {});

} // namespace teamcheck
