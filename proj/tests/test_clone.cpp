#include <doctest.h>

#include "support/clone_oracle.hpp"
#include "support/generators.hpp"
#include "teamcheck/clone.hpp"

#include <vector>

using namespace teamcheck;

namespace {
BooleanFunction binary(unsigned table_bits) {
    std::vector<bool> table(4);
    for (std::size_t r = 0; r < 4; ++r) table[r] = table_bits >> r & 1;
    return BooleanFunction("g" + std::to_string(table_bits), 2, std::move(table));
}
} // namespace

TEST_CASE("label strings round-trip") {
    for (CloneLabel l : {CloneLabel::ID, CloneLabel::E, CloneLabel::V, CloneLabel::M,
                         CloneLabel::N, CloneLabel::L, CloneLabel::BF})
        CHECK(clone_label_from_string(to_string(l)) == l);
    CHECK_THROWS_AS(clone_label_from_string("nope"), std::invalid_argument);
}

TEST_CASE("lattice order") {
    CHECK(clone_leq(CloneLabel::ID, CloneLabel::E));
    CHECK(clone_leq(CloneLabel::ID, CloneLabel::BF));
    CHECK(clone_leq(CloneLabel::E, CloneLabel::M));
    CHECK(clone_leq(CloneLabel::V, CloneLabel::M));
    CHECK(clone_leq(CloneLabel::N, CloneLabel::L));
    CHECK(clone_leq(CloneLabel::M, CloneLabel::BF));
    CHECK(clone_leq(CloneLabel::L, CloneLabel::BF));
    CHECK_FALSE(clone_leq(CloneLabel::E, CloneLabel::V));
    CHECK_FALSE(clone_leq(CloneLabel::V, CloneLabel::E));
    CHECK_FALSE(clone_leq(CloneLabel::M, CloneLabel::L));
    CHECK_FALSE(clone_leq(CloneLabel::L, CloneLabel::M));
    CHECK_FALSE(clone_leq(CloneLabel::N, CloneLabel::M));
    CHECK_FALSE(clone_leq(CloneLabel::E, CloneLabel::N));
    CHECK_FALSE(clone_leq(CloneLabel::BF, CloneLabel::M));
    for (CloneLabel l : {CloneLabel::ID, CloneLabel::E, CloneLabel::V, CloneLabel::M,
                         CloneLabel::N, CloneLabel::L, CloneLabel::BF})
        CHECK(clone_leq(l, l));
}

TEST_CASE("joins") {
    CHECK(clone_join(CloneLabel::E, CloneLabel::V) == CloneLabel::M);
    CHECK(clone_join(CloneLabel::N, CloneLabel::E) == CloneLabel::BF);
    CHECK(clone_join(CloneLabel::L, CloneLabel::M) == CloneLabel::BF);
    CHECK(clone_join(CloneLabel::N, CloneLabel::L) == CloneLabel::L);
    CHECK(clone_join(CloneLabel::ID, CloneLabel::N) == CloneLabel::N);
    CHECK(clone_join(CloneLabel::E, CloneLabel::M) == CloneLabel::M);
    CHECK(clone_join(CloneLabel::V, CloneLabel::N) == CloneLabel::BF);
    for (CloneLabel l : {CloneLabel::ID, CloneLabel::E, CloneLabel::V, CloneLabel::M,
                         CloneLabel::N, CloneLabel::L, CloneLabel::BF}) {
        CHECK(clone_join(l, l) == l);
        CHECK(clone_join(CloneLabel::ID, l) == l);
        CHECK(clone_join(l, CloneLabel::BF) == CloneLabel::BF);
    }
}

TEST_CASE("classify_function on the standard inventory") {
    CHECK(classify_function(BooleanFunction::builtin_and()) == CloneLabel::E);
    CHECK(classify_function(BooleanFunction::builtin_or()) == CloneLabel::V);
    CHECK(classify_function(BooleanFunction::builtin_not()) == CloneLabel::N);
    CHECK(classify_function(BooleanFunction::builtin_xor()) == CloneLabel::L);
    CHECK(classify_function(BooleanFunction::builtin_top()) == CloneLabel::ID);
    CHECK(classify_function(BooleanFunction::builtin_bot()) == CloneLabel::ID);

    CHECK(classify_function(testgen::maj3()) == CloneLabel::M);
    CHECK(classify_function(binary(0b0111)) == CloneLabel::BF); // nand
    CHECK(classify_function(binary(0b1001)) == CloneLabel::L);  // xnor
    CHECK(classify_function(binary(0b0100)) == CloneLabel::BF); // a and not b
    CHECK(classify_function(binary(0b1010)) == CloneLabel::ID); // projection on a
    CHECK(classify_function(binary(0b0101)) == CloneLabel::N);  // not a
    CHECK(classify_function(binary(0b1111)) == CloneLabel::ID); // constant
    BooleanFunction and3("and3", 3, {false, false, false, false, false, false, false, true});
    CHECK(classify_function(and3) == CloneLabel::E);
    BooleanFunction or3("or3", 3, {false, true, true, true, true, true, true, true});
    CHECK(classify_function(or3) == CloneLabel::V);
    BooleanFunction parity3("p3", 3, {false, true, true, false, true, false, false, true});
    CHECK(classify_function(parity3) == CloneLabel::L);
    // a and (b or c): monotone but neither pure-and nor pure-or
    BooleanFunction amob("amob", 3, {false, false, false, true, false, true, false, true});
    CHECK(classify_function(amob) == CloneLabel::M);
}

TEST_CASE("classify_clone joins over the base") {
    CHECK(classify_clone({}) == CloneLabel::ID);
    CHECK(classify_clone({BooleanFunction::builtin_and(), BooleanFunction::builtin_or()}) ==
          CloneLabel::M);
    CHECK(classify_clone({BooleanFunction::builtin_and(), BooleanFunction::builtin_not()}) ==
          CloneLabel::BF);
    CHECK(classify_clone({BooleanFunction::builtin_not(), BooleanFunction::builtin_xor()}) ==
          CloneLabel::L);
    CHECK(classify_clone({BooleanFunction::builtin_top(), BooleanFunction::builtin_bot()}) ==
          CloneLabel::ID);
}

TEST_CASE("closure sizes at small arity") {
    CHECK(closure_oracle({}, 3).size() == 14); // constants and projections only
    CHECK(closure_oracle({BooleanFunction::builtin_not()}, 1).size() == 6);
    CHECK(closure_oracle({BooleanFunction::builtin_and(), BooleanFunction::builtin_or()}, 2)
              .size() == 11);
    CHECK(closure_oracle({BooleanFunction::builtin_xor()}, 2).size() == 14); // 2 + 4 + 8
    CHECK(closure_oracle({BooleanFunction::builtin_and(), BooleanFunction::builtin_not()}, 3)
              .size() == 278); // 2 + 4 + 16 + 256
    CHECK(closure_oracle({testgen::maj3()}, 3).size() == 31); // all monotone functions
    CHECK(closure_oracle({BooleanFunction::builtin_xor()}, 3).size() == 30); // all affine
}

TEST_CASE("closure respects resource limits") {
    ClosureLimits tight;
    tight.max_functions = 10;
    CHECK_THROWS_AS(closure_oracle({BooleanFunction::builtin_and(),
                                    BooleanFunction::builtin_not()},
                                   3, tight),
                    ResourceLimitError);
    ClosureLimits few_compositions;
    few_compositions.max_compositions = 2;
    CHECK_THROWS_AS(closure_oracle({BooleanFunction::builtin_and()}, 2, few_compositions),
                    ResourceLimitError);
    CHECK_THROWS_AS(closure_oracle({}, 7), ResourceLimitError);
}

TEST_CASE("classifier agrees with the closure ground truth on binary singletons") {
    for (unsigned bits = 0; bits < 16; ++bits) {
        BooleanFunction f = binary(bits);
        CHECK_MESSAGE(classify_clone({f}) == testgen::closure_label({f}, 3),
                      "table bits ", bits);
    }
}
