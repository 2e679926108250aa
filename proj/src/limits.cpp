#include "teamcheck/limits.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace teamcheck {

Limits parse_limits(const Limits& base, const std::string& spec) {
    Limits out = base;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("limit entries look like key=value: '" + item + "'");
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        std::size_t parsed = 0;
        try {
            std::size_t used = 0;
            unsigned long long v = std::stoull(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            parsed = static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            throw std::invalid_argument("limit value must be a nonnegative integer: '" + item +
                                        "'");
        }
        if (key == "eval_steps")
            out.eval_steps = parsed;
        else if (key == "closure_functions")
            out.closure_functions = parsed;
        else if (key == "closure_compositions")
            out.closure_compositions = parsed;
        else
            throw std::invalid_argument("unknown limit key: '" + key + "'");
    }
    return out;
}

Limits limits_from_env() {
    Limits base;
    const char* spec = std::getenv("TEAMCHECK_LIMITS");
    if (!spec || !*spec) return base;
    return parse_limits(base, spec);
}

} // namespace teamcheck
