#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "vassgames/antichain.hpp"
#include "vassgames/energy.hpp"
#include "vassgames/game.hpp"
#include "vassgames/semantics.hpp"

using namespace vassgames;
using testing_support::Rng;
using testing_support::below;

namespace {

PartialConfig cfg(StateId q, std::vector<std::optional<Value>> vals) {
    PartialConfig g(q, vals.size());
    for (CounterId c = 0; c < vals.size(); ++c)
        if (vals[c]) g.set(c, *vals[c]);
    return g;
}

IntegerGame two_counter_game() {
    return IntegerGame({"c1", "c2"}, {{"q", Player::P0, 0}, {"r", Player::P1, 1}},
                       {{"t", 0, CounterOp::inc(0), 1, ""}, {"u", 1, CounterOp::nop(), 0, ""}});
}

}  // namespace

TEST_CASE("is_single_sided") {
    const IntegerGame p0_only({"c"}, {{"q", Player::P0, 0}}, {{"t", 0, CounterOp::dec(0), 0, ""}},
                              Completion::AllowStuck);
    CHECK(is_single_sided(p0_only));
    const IntegerGame p1_dec({"c"}, {{"q", Player::P1, 0}}, {{"t", 0, CounterOp::dec(0), 0, ""}},
                             Completion::AllowStuck);
    CHECK_FALSE(is_single_sided(p1_dec));
    CHECK(is_single_sided(energy_to_single_sided(p1_dec).game));
}

TEST_CASE("game construction validates") {
    CHECK_THROWS_AS(IntegerGame({"c"}, {}, {}), GameError);
    CHECK_THROWS_AS(IntegerGame({"c"}, {{"q", Player::P0, 0}}, {{"t", 0, CounterOp::nop(), 3, ""}}), GameError);
    CHECK_THROWS_AS(IntegerGame({"c"}, {{"q", Player::P0, 0}}, {{"t", 0, CounterOp::inc(4), 0, ""}}), GameError);
    CHECK_THROWS_AS(IntegerGame({"c"}, {{"q", Player::P0, 0}}, {}), GameError);
    const IntegerGame dec_only({"c"}, {{"q", Player::P0, 0}}, {{"t", 0, CounterOp::dec(0), 0, ""}});
    CHECK_FALSE(dec_only.vass_deadlock_free());
}

TEST_CASE("completion adds losing sinks") {
    const IntegerGame g({"c"}, {{"a", Player::P0, 0}, {"b", Player::P1, 0}},
                        {{"t", 0, CounterOp::dec(0), 1, ""}, {"u", 1, CounterOp::dec(0), 0, ""}},
                        Completion::AddSinks);
    CHECK(g.vass_deadlock_free());
    REQUIRE(g.num_states() == 4);
    const auto lose = g.find_state("sink_lose0");
    const auto win = g.find_state("sink_win0");
    REQUIRE(lose);
    REQUIRE(win);
    CHECK(g.color(*lose) == 1);
    CHECK(g.color(*win) == 0);
}

TEST_CASE("leq") {
    CHECK(leq(cfg(0, {3}), cfg(0, {3})));
    CHECK_FALSE(leq(cfg(0, {1, 2}), cfg(0, {2, 1})));
    CHECK_FALSE(leq(cfg(0, {2, 1}), cfg(0, {1, 2})));
    CHECK_FALSE(leq(cfg(0, {1}), cfg(1, {5})));
    CHECK_FALSE(leq(cfg(0, {1, std::nullopt}), cfg(0, {1, 1})));
    CHECK(less(cfg(0, {1, 1}), cfg(0, {1, 2})));
    CHECK_FALSE(less(cfg(0, {1, 1}), cfg(0, {1, 1})));
}

TEST_CASE("leq is a partial order on comparable configurations") {
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const CounterSet dom = static_cast<CounterSet>(below(rng, 4));
        const auto a = testing_support::random_config(rng, 0, 2, dom, 2);
        const auto b = testing_support::random_config(rng, 0, 2, dom, 2);
        const auto c = testing_support::random_config(rng, 0, 2, dom, 2);
        CHECK(leq(a, a));
        if (leq(a, b) && leq(b, a)) CHECK(a == b);
        if (leq(a, b) && leq(b, c)) CHECK(leq(a, c));
    }
}

TEST_CASE("oplus and restrict") {
    CHECK(oplus(cfg(0, {1, std::nullopt}), cfg(0, {std::nullopt, 4})) == cfg(0, {1, 4}));
    CHECK(oplus(cfg(0, {std::nullopt, std::nullopt}), cfg(0, {0, 0})) == cfg(0, {0, 0}));
    CHECK_THROWS_AS(oplus(cfg(0, {1, std::nullopt}), cfg(0, {2, std::nullopt})), GameError);
    CHECK_THROWS_AS(oplus(cfg(0, {1, std::nullopt}), cfg(1, {std::nullopt, 2})), GameError);

    CHECK(restrict(cfg(0, {1, 4}), 0b01) == cfg(0, {1, std::nullopt}));
    CHECK(restrict(cfg(0, {1, std::nullopt}), 0) == cfg(0, {std::nullopt, std::nullopt}));
    CHECK(restrict(cfg(0, {1, std::nullopt}), 0b11) == cfg(0, {1, std::nullopt}));

    Rng rng(12);
    for (int i = 0; i < 500; ++i) {
        const CounterSet dom = static_cast<CounterSet>(below(rng, 8));
        const auto g = testing_support::random_config(rng, 0, 3, dom, 5);
        const CounterSet part = static_cast<CounterSet>(below(rng, 8)) & dom;
        CHECK(oplus(restrict(g, part), restrict(g, dom & ~part)) == g);
    }
}

TEST_CASE("antichain insert") {
    Antichain a;
    a.add(cfg(0, {1, 2}));
    CHECK(a.insert(cfg(0, {1, 2})) == a);
    Antichain two = a.insert(cfg(0, {2, 1}));
    CHECK(two.size() == 2);
    const Antichain zero = two.insert(cfg(0, {0, 0}));
    REQUIRE(zero.size() == 1);
    CHECK(zero.elements().front() == cfg(0, {0, 0}));
    CHECK(a.insert(cfg(0, {3, 3})) == a);
    CHECK_THROWS_AS(a.insert(cfg(0, {1, std::nullopt})), GameError);
    CHECK(two.covers(cfg(0, {2, 2})));
    CHECK_FALSE(two.covers(cfg(0, {0, 5})));
}

TEST_CASE("antichain insert is order-insensitive and idempotent") {
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        std::vector<PartialConfig> items;
        for (int k = 0; k < 6; ++k) items.push_back(testing_support::random_config(rng, 0, 2, 0b11, 3));
        Antichain first;
        for (const auto& g : items) first.add(g);
        std::shuffle(items.begin(), items.end(), rng);
        Antichain second;
        for (const auto& g : items) second.add(g);
        CHECK(first == second);
        for (const auto& g : items) CHECK_FALSE(second.add(g));
        for (const auto& x : first.elements())
            for (const auto& y : first.elements())
                if (!(x == y)) CHECK_FALSE(leq(x, y));
    }
}

TEST_CASE("complement ideals") {
    const auto none = complement_ideals(Antichain{}, 0b1, 0, 1);
    REQUIRE(none.size() == 1);
    CHECK(none[0].bounds == std::vector<Value>{kOmega});

    Antichain one;
    one.add(cfg(0, {2}));
    const auto below_two = complement_ideals(one, 0b1, 0, 1);
    REQUIRE(below_two.size() == 1);
    CHECK(below_two[0].bounds == std::vector<Value>{1});

    Antichain pair;
    pair.add(cfg(0, {1, 2}));
    pair.add(cfg(0, {2, 1}));
    auto ideals = complement_ideals(pair, 0b11, 0, 2);
    std::vector<std::vector<Value>> got;
    for (const auto& i : ideals) got.push_back(i.bounds);
    std::sort(got.begin(), got.end());
    std::vector<std::vector<Value>> want{{0, kOmega}, {kOmega, 0}, {1, 1}};
    std::sort(want.begin(), want.end());
    CHECK(got == want);

    const Antichain wrong_state = Antichain{}.insert(cfg(1, {2}));
    CHECK_THROWS_AS(complement_ideals(wrong_state, 0b1, 0, 1), GameError);
}

TEST_CASE("complement ideals cover exactly the complement") {
    Rng rng(14);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 1 + below(rng, 3);
        const CounterSet all = all_counters(n);
        Antichain a;
        const std::size_t size = below(rng, 4);
        for (std::size_t k = 0; k < size; ++k) a.add(testing_support::random_config(rng, 0, n, all, 4));
        const auto ideals = complement_ideals(a, all, 0, n);
        for (const auto& v : testing_support::all_valuations(n, 5)) {
            const PartialConfig g = make_concrete(0, v);
            const bool in_ideal = std::any_of(ideals.begin(), ideals.end(), [&](const Ideal& I) { return I.contains(g); });
            CHECK(in_ideal == !a.covers(g));
        }
        for (const auto& x : ideals)
            for (const auto& y : ideals)
                if (!(x == y)) CHECK_FALSE(x.subset_of(y));
    }
}

TEST_CASE("energy and vass steps") {
    const IntegerGame g({"c"}, {{"q0", Player::P0, 0}, {"q1", Player::P0, 0}},
                        {{"inc", 0, CounterOp::inc(0), 1, ""},
                         {"dec", 0, CounterOp::dec(0), 1, ""},
                         {"back", 1, CounterOp::nop(), 0, ""}});
    const auto up = energy_step(g, {0, {0}}, 0);
    REQUIRE(up);
    CHECK(*up == IntConfig{1, {1}});
    const auto neg = energy_step(g, {0, {0}}, 1);
    REQUIRE(neg);
    CHECK(*neg == IntConfig{1, {-1}});
    CHECK_FALSE(energy_step(g, {0, {5}}, 2));

    CHECK_FALSE(vass_step(g, make_concrete(0, std::vector<Value>{0}), 1));
    const auto undef = vass_step(g, make_abstract(0, 1), 1);
    REQUIRE(undef);
    CHECK(*undef == make_abstract(1, 1));
    const auto three = vass_step(g, make_concrete(0, std::vector<Value>{2}), 0);
    REQUIRE(three);
    CHECK(*three == make_concrete(1, std::vector<Value>{3}));
    CHECK_THROWS(vass_step(g, make_abstract(0, 1), 9));

    CHECK(enabled_transitions(g, make_concrete(0, std::vector<Value>{0}), Semantics::Energy).size() == 2);
    CHECK(enabled_transitions(g, make_concrete(0, std::vector<Value>{0}), Semantics::Vass) ==
          std::vector<TransitionId>{0});
    CHECK(enabled_transitions(g, make_abstract(0, 1), Semantics::Vass).size() == 2);
}

TEST_CASE("energy and vass steps agree where vass is defined") {
    Rng rng(15);
    for (int i = 0; i < 200; ++i) {
        testing_support::GameShape shape;
        shape.counters = 2;
        const IntegerGame g = testing_support::random_game(rng, shape);
        for (TransitionId t = 0; t < g.num_transitions(); ++t) {
            const auto q = g.transition(t).source;
            const std::vector<Value> v{static_cast<Value>(below(rng, 3)), static_cast<Value>(below(rng, 3))};
            const auto vs = vass_step(g, make_concrete(q, v), t);
            if (!vs) continue;
            const auto es = energy_step(g, {q, v}, t);
            REQUIRE(es);
            CHECK(es->state == vs->state);
            CHECK(es->values == vs->values);
        }
    }
}

TEST_CASE("plays") {
    const IntegerGame g({"c"}, {{"q0", Player::P0, 0}}, {{"t", 0, CounterOp::dec(0), 0, ""}},
                        Completion::AllowStuck);
    Play p{{0, {1}}, {}};
    extend(g, p, 0);
    extend(g, p, 0);
    CHECK(p.last() == IntConfig{0, {-1}});
    CHECK(p.steps.size() == 2);
}

TEST_CASE("restrict_to_reachable") {
    const IntegerGame g = two_counter_game();
    std::vector<std::int64_t> map;
    const StateId root = 1;
    const IntegerGame r = restrict_to_reachable(g, std::span<const StateId>(&root, 1), &map);
    CHECK(r.num_states() == 2);
    CHECK(map.size() == 2);
}
