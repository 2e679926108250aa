#include <doctest.h>

#include "teamcheck/kripke.hpp"

#include <vector>

using namespace teamcheck;

namespace {

KripkeModel fork_model() {
    // r branches to a and b; a loops; b is a dead end
    return KripkeModel({"r", "a", "b"}, {{"r", "a"}, {"r", "b"}, {"a", "a"}},
                       {{"a", {"p"}}});
}

std::vector<std::vector<std::uint32_t>> collect_teams(const KripkeModel& m, const Team& t) {
    std::vector<std::vector<std::uint32_t>> out;
    for_each_successor_team(m, t, [&](const Team& s) {
        out.push_back(s.members());
        return false;
    });
    return out;
}

} // namespace

TEST_CASE("team set operations") {
    Team a(5);
    CHECK(a.empty());
    a.add(1);
    a.add(3);
    CHECK(a.size() == 2);
    CHECK(a.contains(3));
    CHECK_FALSE(a.contains(0));
    CHECK(a.members() == std::vector<std::uint32_t>{1, 3});

    Team b = Team::from_indices(5, {3});
    CHECK(b.subset_of(a));
    CHECK_FALSE(a.subset_of(b));
    CHECK(a.intersects(b));
    b.add(4);
    CHECK_FALSE(b.subset_of(a));

    Team u = a;
    u.unite(b);
    CHECK(u.members() == std::vector<std::uint32_t>{1, 3, 4});
    CHECK(u != a);
    a.remove(1);
    CHECK(a.members() == std::vector<std::uint32_t>{3});

    Team empty(5);
    CHECK(empty.subset_of(a));
    CHECK_FALSE(empty.intersects(a));
}

TEST_CASE("model construction validates") {
    CHECK_THROWS_AS(KripkeModel({"a", "a"}, {}, {}), ModelError);
    CHECK_THROWS_AS(KripkeModel({"a"}, {{"a", "b"}}, {}), ModelError);
    CHECK_THROWS_AS(KripkeModel({"a"}, {}, {{"b", {"p"}}}), ModelError);
    CHECK_NOTHROW(KripkeModel({}, {}, {}));
}

TEST_CASE("model accessors") {
    KripkeModel m = fork_model();
    CHECK(m.size() == 3);
    CHECK(m.worlds() == std::vector<std::string>{"r", "a", "b"});
    CHECK(m.world_name(2) == "b");
    CHECK(m.world_index("a") == 1);
    CHECK_FALSE(m.world_index("zz").has_value());
    CHECK(m.has_prop(1, "p"));
    CHECK_FALSE(m.has_prop(0, "p"));
    CHECK(m.worlds_with("p").members() == std::vector<std::uint32_t>{1});
    CHECK(m.worlds_with("absent").empty());
    CHECK(m.valuation_of(1) == std::vector<std::string>{"p"});
    CHECK_FALSE(m.serial()); // b has no successor

    CHECK(m.successors_of(0).members() == std::vector<std::uint32_t>{1, 2});
    CHECK(m.successors_of(2).empty());
    Team t = Team::from_indices(3, {0, 1});
    CHECK(m.successors(t).members() == std::vector<std::uint32_t>{1, 2});
}

TEST_CASE("team text round trip") {
    KripkeModel m = fork_model();
    CHECK(parse_team(m, "").empty());
    CHECK(parse_team(m, "{}").empty());
    CHECK(parse_team(m, "{r, b}").members() == std::vector<std::uint32_t>{0, 2});
    CHECK(parse_team(m, " a ,a ").members() == std::vector<std::uint32_t>{1});
    CHECK(parse_team(m, "a,b") == parse_team(m, "{ a , b }"));
    CHECK_THROWS_AS(parse_team(m, "nope"), ModelError);
    CHECK_THROWS_AS(parse_team(m, "a,,b"), ModelError);

    Team t = Team::from_indices(3, {0, 1});
    CHECK(format_team(m, t) == "r,a");
    CHECK(parse_team(m, format_team(m, t)) == t);
    CHECK(format_team(m, Team(3)) == "");
}

TEST_CASE("model json round trip") {
    KripkeModel m = fork_model();
    KripkeModel back = load_model(save_model(m));
    CHECK(back == m);

    KripkeModel empty_valuation({"x"}, {{"x", "x"}}, {});
    CHECK(load_model(save_model(empty_valuation)) == empty_valuation);

    CHECK_THROWS_AS(load_model("not json"), ModelError);
    CHECK_THROWS_AS(load_model("{}"), ModelError);
    CHECK_THROWS_AS(load_model(R"({"worlds": ["a", "a"], "relation": []})"), ModelError);
    CHECK_THROWS_AS(load_model(R"({"worlds": ["a"], "relation": [["a", "b"]]})"), ModelError);
    CHECK_THROWS_AS(load_model(R"({"worlds": ["a"], "relation": [["a"]]})"), ModelError);
    CHECK_THROWS_AS(load_model(R"({"worlds": "a", "relation": []})"), ModelError);
    CHECK_THROWS_AS(
        load_model(R"({"worlds": ["a"], "relation": [], "valuation": {"b": ["p"]}})"),
        ModelError);
}

TEST_CASE("successor teams come smallest-first in index order") {
    KripkeModel m = fork_model();

    // single root: covering subsets of {a, b}
    auto teams = collect_teams(m, Team::from_indices(3, {0}));
    REQUIRE(teams.size() == 3);
    CHECK(teams[0] == std::vector<std::uint32_t>{1});
    CHECK(teams[1] == std::vector<std::uint32_t>{2});
    CHECK(teams[2] == std::vector<std::uint32_t>{1, 2});

    // two sources with overlapping successor sets
    KripkeModel two({"r1", "r2", "a", "b", "c"},
                    {{"r1", "a"}, {"r1", "b"}, {"r2", "b"}, {"r2", "c"}}, {});
    auto covers = collect_teams(two, Team::from_indices(5, {0, 1}));
    std::vector<std::vector<std::uint32_t>> want = {
        {3}, {2, 3}, {2, 4}, {3, 4}, {2, 3, 4}};
    CHECK(covers == want);

    // eager variant agrees
    std::vector<Team> eager = successor_teams(two, Team::from_indices(5, {0, 1}));
    REQUIRE(eager.size() == want.size());
    for (std::size_t i = 0; i < eager.size(); ++i) CHECK(eager[i].members() == want[i]);
}

TEST_CASE("dead ends and the empty team") {
    KripkeModel m = fork_model();

    // a dead-end member kills every covering team
    CHECK(collect_teams(m, Team::from_indices(3, {2})).empty());
    CHECK(collect_teams(m, Team::from_indices(3, {0, 2})).empty());

    // the empty team has exactly the empty successor team
    auto of_empty = collect_teams(m, Team(3));
    REQUIRE(of_empty.size() == 1);
    CHECK(of_empty[0].empty());
}

TEST_CASE("enumeration short-circuits") {
    KripkeModel m = fork_model();
    int calls = 0;
    bool stopped = for_each_successor_team(m, Team::from_indices(3, {0}), [&](const Team&) {
        ++calls;
        return true;
    });
    CHECK(stopped);
    CHECK(calls == 1);
    CHECK_FALSE(for_each_successor_team(m, Team::from_indices(3, {0}),
                                        [](const Team&) { return false; }));
}

TEST_CASE("random models are deterministic per seed") {
    KripkeModel a = make_random_model(42, 6, 0.3, {"p", "q"});
    KripkeModel b = make_random_model(42, 6, 0.3, {"p", "q"});
    CHECK(a == b);
    KripkeModel c = make_random_model(43, 6, 0.3, {"p", "q"});
    CHECK(a != c);
    CHECK(a.size() == 6);

    KripkeModel isolated = make_random_model(7, 5, 0.0, {"p"});
    CHECK_FALSE(isolated.serial());
    KripkeModel forced = make_random_model(7, 5, 0.0, {"p"}, true);
    CHECK(forced.serial());
}
