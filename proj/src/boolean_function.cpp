#include "teamcheck/boolean_function.hpp"

#include <json.hpp>

namespace teamcheck {

BooleanFunction::BooleanFunction(std::string name, unsigned arity, std::vector<bool> table)
    : name_(std::move(name)), arity_(arity), table_(std::move(table)) {
    if (name_.empty())
        throw std::invalid_argument("boolean function needs a name");
    if (arity_ > 16)
        throw std::invalid_argument("boolean function arity above 16 is not supported");
    if (table_.size() != (std::size_t{1} << arity_))
        throw std::invalid_argument("boolean function '" + name_ + "': table size must be 2^arity");
}

bool BooleanFunction::eval(const std::vector<bool>& args) const {
    if (args.size() != arity_)
        throw std::invalid_argument("function '" + name_ + "' expects " + std::to_string(arity_) +
                                    " arguments, got " + std::to_string(args.size()));
    std::size_t index = 0;
    for (std::size_t i = 0; i < args.size(); ++i)
        if (args[i]) index |= std::size_t{1} << i;
    return table_[index];
}

std::vector<unsigned> BooleanFunction::essential_args() const {
    std::vector<unsigned> result;
    const std::size_t rows = table_.size();
    for (unsigned i = 0; i < arity_; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t r = 0; r < rows; ++r) {
            if (table_[r] != table_[r ^ bit]) {
                result.push_back(i);
                break;
            }
        }
    }
    return result;
}

bool BooleanFunction::is_monotone() const {
    const std::size_t rows = table_.size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (unsigned i = 0; i < arity_; ++i) {
            const std::size_t bit = std::size_t{1} << i;
            if (!(r & bit) && table_[r] && !table_[r | bit])
                return false;
        }
    }
    return true;
}

bool BooleanFunction::is_affine() const {
    // f is affine iff l(x) = f(x) xor f(0) equals the parity of a fixed
    // subset of arguments. Build the candidate subset from unit vectors,
    // then verify it against the whole table.
    const bool c = table_[0];
    std::size_t mask = 0;
    for (unsigned i = 0; i < arity_; ++i)
        if (table_[std::size_t{1} << i] != c)
            mask |= std::size_t{1} << i;
    const std::size_t rows = table_.size();
    for (std::size_t r = 0; r < rows; ++r) {
        const bool parity = __builtin_parityll(static_cast<unsigned long long>(r & mask)) != 0;
        if (table_[r] != (c ^ parity))
            return false;
    }
    return true;
}

namespace {
BooleanFunction make_builtin(const char* name, unsigned arity, std::initializer_list<int> bits) {
    std::vector<bool> table;
    table.reserve(bits.size());
    for (int b : bits) table.push_back(b != 0);
    return BooleanFunction(name, arity, std::move(table));
}
} // namespace

const BooleanFunction& BooleanFunction::builtin_and() {
    static const BooleanFunction f = make_builtin("and", 2, {0, 0, 0, 1});
    return f;
}
const BooleanFunction& BooleanFunction::builtin_or() {
    static const BooleanFunction f = make_builtin("or", 2, {0, 1, 1, 1});
    return f;
}
const BooleanFunction& BooleanFunction::builtin_not() {
    static const BooleanFunction f = make_builtin("not", 1, {1, 0});
    return f;
}
const BooleanFunction& BooleanFunction::builtin_xor() {
    static const BooleanFunction f = make_builtin("xor", 2, {0, 1, 1, 0});
    return f;
}
const BooleanFunction& BooleanFunction::builtin_top() {
    static const BooleanFunction f = make_builtin("top", 0, {1});
    return f;
}
const BooleanFunction& BooleanFunction::builtin_bot() {
    static const BooleanFunction f = make_builtin("bot", 0, {0});
    return f;
}

bool eval_function(const BooleanFunction& f, const std::vector<bool>& args) {
    return f.eval(args);
}

const FunctionRegistry& FunctionRegistry::builtins() {
    static const FunctionRegistry reg = [] {
        FunctionRegistry r;
        r.add(BooleanFunction::builtin_and());
        r.add(BooleanFunction::builtin_or());
        r.add(BooleanFunction::builtin_not());
        r.add(BooleanFunction::builtin_xor());
        r.add(BooleanFunction::builtin_top());
        r.add(BooleanFunction::builtin_bot());
        return r;
    }();
    return reg;
}

void FunctionRegistry::add(BooleanFunction f) {
    auto name = f.name();
    if (!functions_.emplace(name, std::move(f)).second)
        throw std::invalid_argument("function '" + name + "' is already defined");
}

void FunctionRegistry::merge_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("function table file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("function table file must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const auto& entry = it.value();
        if (!entry.is_object() || !entry.contains("arity") || !entry.contains("table"))
            throw std::invalid_argument("function '" + it.key() + "': expected {\"arity\": n, \"table\": [...]}");
        if (!entry["arity"].is_number_unsigned())
            throw std::invalid_argument("function '" + it.key() + "': arity must be a non-negative integer");
        const unsigned arity = entry["arity"].get<unsigned>();
        if (!entry["table"].is_array())
            throw std::invalid_argument("function '" + it.key() + "': table must be an array");
        std::vector<bool> table;
        table.reserve(entry["table"].size());
        for (const auto& bit : entry["table"]) {
            if (bit.is_boolean())
                table.push_back(bit.get<bool>());
            else if (bit.is_number_integer() && (bit.get<int>() == 0 || bit.get<int>() == 1))
                table.push_back(bit.get<int>() == 1);
            else
                throw std::invalid_argument("function '" + it.key() + "': table entries must be 0/1 or booleans");
        }
        add(BooleanFunction(it.key(), arity, std::move(table)));
    }
}

const BooleanFunction* FunctionRegistry::find(const std::string& name) const {
    auto it = functions_.find(name);
    return it == functions_.end() ? nullptr : &it->second;
}

std::vector<BooleanFunction> FunctionRegistry::all() const {
    std::vector<BooleanFunction> out;
    out.reserve(functions_.size());
    for (const auto& [_, f] : functions_) out.push_back(f);
    return out;
}

} // namespace teamcheck
