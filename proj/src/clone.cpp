#include "teamcheck/clone.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace teamcheck {

const char* to_string(CloneLabel label) {
    switch (label) {
        case CloneLabel::ID: return "ID";
        case CloneLabel::E: return "E";
        case CloneLabel::V: return "V";
        case CloneLabel::M: return "M";
        case CloneLabel::N: return "N";
        case CloneLabel::L: return "L";
        case CloneLabel::BF: return "BF";
    }
    return "?";
}

CloneLabel clone_label_from_string(const std::string& text) {
    static const std::array<CloneLabel, 7> all = {CloneLabel::ID, CloneLabel::E, CloneLabel::V,
                                                  CloneLabel::M,  CloneLabel::N, CloneLabel::L,
                                                  CloneLabel::BF};
    for (CloneLabel l : all)
        if (text == to_string(l)) return l;
    throw std::invalid_argument("unknown clone label '" + text + "'");
}

bool clone_leq(CloneLabel a, CloneLabel b) {
    if (a == b) return true;
    switch (a) {
        case CloneLabel::ID:
            return true;
        case CloneLabel::E:
        case CloneLabel::V:
            return b == CloneLabel::M || b == CloneLabel::BF;
        case CloneLabel::M:
            return b == CloneLabel::BF;
        case CloneLabel::N:
            return b == CloneLabel::L || b == CloneLabel::BF;
        case CloneLabel::L:
            return b == CloneLabel::BF;
        case CloneLabel::BF:
            return false;
    }
    return false;
}

CloneLabel clone_join(CloneLabel a, CloneLabel b) {
    static const std::array<CloneLabel, 7> all = {CloneLabel::ID, CloneLabel::E, CloneLabel::V,
                                                  CloneLabel::N,  CloneLabel::M, CloneLabel::L,
                                                  CloneLabel::BF};
    CloneLabel best = CloneLabel::BF;
    for (CloneLabel c : all)
        if (clone_leq(a, c) && clone_leq(b, c) && clone_leq(c, best)) best = c;
    return best;
}

CloneLabel classify_function(const BooleanFunction& f) {
    const auto essential = f.essential_args();

    if (essential.size() <= 1) {
        if (essential.empty()) return CloneLabel::ID; // constant
        // Projection or negated projection on the single essential argument.
        const std::size_t bit = std::size_t{1} << essential[0];
        return f.table()[bit] ? CloneLabel::ID : CloneLabel::N;
    }

    if (f.is_affine()) return CloneLabel::L;

    if (f.is_monotone()) {
        std::size_t mask = 0;
        for (unsigned i : essential) mask |= std::size_t{1} << i;
        const std::size_t rows = f.table().size();
        bool and_type = true, or_type = true;
        for (std::size_t r = 0; r < rows && (and_type || or_type); ++r) {
            if (f.table()[r] != ((r & mask) == mask)) and_type = false;
            if (f.table()[r] != ((r & mask) != 0)) or_type = false;
        }
        if (and_type) return CloneLabel::E;
        if (or_type) return CloneLabel::V;
        return CloneLabel::M;
    }

    return CloneLabel::BF;
}

CloneLabel classify_clone(const std::vector<BooleanFunction>& base) {
    CloneLabel label = CloneLabel::ID;
    for (const auto& f : base) label = clone_join(label, classify_function(f));
    return label;
}

namespace {

// Table of a k-ary function packed into a 64-bit word (k <= 4 in practice,
// the constructor below guards k <= 6).
struct PackedFn {
    unsigned arity;
    std::uint64_t bits;
    bool operator<(const PackedFn& o) const {
        return arity != o.arity ? arity < o.arity : bits < o.bits;
    }
};

std::string hex_bits(std::uint64_t bits) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    do {
        out.insert(out.begin(), digits[bits & 0xf]);
        bits >>= 4;
    } while (bits);
    return out;
}

} // namespace

std::vector<BooleanFunction> closure_oracle(const std::vector<BooleanFunction>& base,
                                            unsigned max_arity, const ClosureLimits& limits) {
    if (max_arity > 6)
        throw ResourceLimitError("closure_oracle: max_arity above 6 is not supported");

    std::vector<BooleanFunction> result;
    for (unsigned k = 0; k <= max_arity; ++k) {
        const std::size_t rows = std::size_t{1} << k;
        const std::uint64_t row_mask = rows >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rows) - 1);

        std::set<std::uint64_t> tables;
        auto push = [&](std::uint64_t t) {
            if (tables.insert(t).second && tables.size() > limits.max_functions)
                throw ResourceLimitError("closure_oracle: function count limit exceeded "
                                         "(raise via limits)");
        };

        push(0);        // constant 0
        push(row_mask); // constant 1
        for (unsigned i = 0; i < k; ++i) {
            std::uint64_t t = 0;
            for (std::size_t r = 0; r < rows; ++r)
                if (r & (std::size_t{1} << i)) t |= std::uint64_t{1} << r;
            push(t);
        }

        // Bottom-up term closure: repeatedly apply every base function to
        // tuples of already-derived k-ary functions until nothing new shows.
        bool changed = true;
        while (changed) {
            changed = false;
            const std::vector<std::uint64_t> snapshot(tables.begin(), tables.end());
            for (const auto& f : base) {
                const unsigned n = f.arity();
                std::uint64_t tuple_count = 1;
                for (unsigned i = 0; i < n; ++i) {
                    tuple_count *= snapshot.size();
                    if (tuple_count > limits.max_compositions)
                        throw ResourceLimitError("closure_oracle: composition limit exceeded "
                                                 "(raise via limits)");
                }
                std::vector<std::size_t> index(n, 0);
                std::vector<bool> args(n);
                const std::size_t before = tables.size();
                for (std::uint64_t t = 0; t < tuple_count; ++t) {
                    std::uint64_t out = 0;
                    for (std::size_t r = 0; r < rows; ++r) {
                        for (unsigned i = 0; i < n; ++i)
                            args[i] = (snapshot[index[i]] >> r) & 1;
                        if (f.eval(args)) out |= std::uint64_t{1} << r;
                    }
                    push(out);
                    for (unsigned i = 0; i < n; ++i) {
                        if (++index[i] < snapshot.size()) break;
                        index[i] = 0;
                    }
                }
                if (tables.size() != before) changed = true;
            }
        }

        for (std::uint64_t t : tables) {
            std::vector<bool> table(rows);
            for (std::size_t r = 0; r < rows; ++r) table[r] = (t >> r) & 1;
            result.emplace_back("f" + std::to_string(k) + "_" + hex_bits(t), k, std::move(table));
        }
    }
    return result;
}

} // namespace teamcheck
