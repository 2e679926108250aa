#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace teamcheck {

// A boolean function given by its full truth table. Row indices encode the
// argument tuple with the FIRST argument in the least significant bit, so
// table[a0 + 2*a1 + 4*a2 ...] is the value at (a0, a1, a2, ...).
class BooleanFunction {
public:
    BooleanFunction(std::string name, unsigned arity, std::vector<bool> table);

    const std::string& name() const { return name_; }
    unsigned arity() const { return arity_; }
    const std::vector<bool>& table() const { return table_; }

    bool eval(const std::vector<bool>& args) const;

    // Structural probes used by the clone classifier.
    std::vector<unsigned> essential_args() const;
    bool is_monotone() const;
    bool is_affine() const;

    bool operator==(const BooleanFunction& other) const {
        return name_ == other.name_ && arity_ == other.arity_ && table_ == other.table_;
    }
    bool operator!=(const BooleanFunction& other) const { return !(*this == other); }

    static const BooleanFunction& builtin_and();
    static const BooleanFunction& builtin_or();
    static const BooleanFunction& builtin_not();
    static const BooleanFunction& builtin_xor();
    static const BooleanFunction& builtin_top();
    static const BooleanFunction& builtin_bot();

private:
    std::string name_;
    unsigned arity_;
    std::vector<bool> table_;
};

// Convenience free function mirroring the table lookup.
bool eval_function(const BooleanFunction& f, const std::vector<bool>& args);

// Named function lookup for the parser and the CLI. Starts from the six
// builtins (and, or, not, xor, top, bot); user tables can be merged from a
// JSON sidecar of the form {"name": {"arity": n, "table": [0,1,...]}}.
class FunctionRegistry {
public:
    static const FunctionRegistry& builtins();

    void add(BooleanFunction f);
    void merge_json(const std::string& json_text);

    const BooleanFunction* find(const std::string& name) const;
    std::vector<BooleanFunction> all() const;

private:
    std::map<std::string, BooleanFunction> functions_;
};

} // namespace teamcheck
