#pragma once

#include <cstddef>
#include <string>

namespace teamcheck {

// Resource caps for command-line runs.  The TEAMCHECK_LIMITS environment
// variable overrides fields with a comma-separated key=value list, e.g.
//   TEAMCHECK_LIMITS=eval_steps=2000000,closure_functions=50000
struct Limits {
    std::size_t eval_steps = 0; // evaluation step budget, 0 = unlimited
    std::size_t closure_functions = 100000;
    std::size_t closure_compositions = 50000000;
};

// Applies a spec like "eval_steps=1000,closure_functions=99" on top of base.
// Unknown keys or malformed values raise std::invalid_argument.
Limits parse_limits(const Limits& base, const std::string& spec);

// Default limits overridden by TEAMCHECK_LIMITS when set and nonempty.
Limits limits_from_env();

} // namespace teamcheck
