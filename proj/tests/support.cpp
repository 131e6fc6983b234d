#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "vassgames/semantics.hpp"

namespace testing_support {

IntegerGame random_game(Rng& rng, const GameShape& shape) {
    std::vector<std::string> counters;
    for (std::size_t c = 0; c < shape.counters; ++c) counters.push_back("c" + std::to_string(c));
    std::vector<State> states;
    for (std::size_t q = 0; q < shape.states; ++q)
        states.push_back({"q" + std::to_string(q), below(rng, 2) ? Player::P1 : Player::P0,
                          static_cast<int>(below(rng, shape.max_color + 1))});
    std::vector<Transition> transitions;
    for (StateId q = 0; q < shape.states; ++q) {
        const std::size_t out = 1 + below(rng, shape.max_out);
        const bool nop_only = shape.single_sided && states[q].owner == Player::P1;
        for (std::size_t k = 0; k < out; ++k) {
            CounterOp op;
            if (!nop_only && shape.counters > 0 && static_cast<int>(below(rng, 100)) < shape.op_percent) {
                const auto c = static_cast<CounterId>(below(rng, shape.counters));
                const bool dec = static_cast<int>(below(rng, 100)) < shape.dec_percent;
                if (!dec) op = CounterOp::inc(c);
                else if (k > 0 || !shape.deadlock_free) op = CounterOp::dec(c);
            }
            transitions.push_back({"t" + std::to_string(transitions.size()), q, op,
                                   static_cast<StateId>(below(rng, shape.states)), ""});
        }
    }
    return IntegerGame(std::move(counters), std::move(states), std::move(transitions));
}

FiniteParityGame random_parity_game(Rng& rng, std::size_t vertices, int max_color, std::size_t max_out) {
    FiniteParityGame g;
    for (std::size_t v = 0; v < vertices; ++v)
        g.add_vertex(below(rng, 2) ? Player::P1 : Player::P0, static_cast<int>(below(rng, max_color + 1)));
    for (FiniteParityGame::Vertex v = 0; v < vertices; ++v) {
        const std::size_t out = 1 + below(rng, max_out);
        for (std::size_t k = 0; k < out; ++k)
            g.add_edge(v, static_cast<FiniteParityGame::Vertex>(below(rng, vertices)));
    }
    return g;
}

PartialConfig random_config(Rng& rng, StateId q, std::size_t num_counters, CounterSet dom, Value max_value) {
    PartialConfig g(q, num_counters);
    for (CounterId c = 0; c < num_counters; ++c)
        if (contains(dom, c)) g.set(c, static_cast<Value>(below(rng, max_value + 1)));
    return g;
}

std::vector<std::vector<Value>> all_valuations(std::size_t n, Value bound) {
    std::vector<std::vector<Value>> out;
    std::vector<Value> v(n, 0);
    for (;;) {
        out.push_back(v);
        std::size_t i = n;
        while (i > 0 && v[i - 1] == bound) v[--i] = 0;
        if (i == 0) return out;
        ++v[i - 1];
    }
}

IntegerGame random_labeled_vass(Rng& rng, std::size_t states, const std::vector<std::string>& alphabet) {
    std::vector<State> st;
    for (std::size_t q = 0; q < states; ++q) st.push_back({"p" + std::to_string(q), Player::P0, 0});
    std::vector<Transition> transitions;
    for (StateId q = 0; q < states; ++q) {
        const std::size_t out = below(rng, 3);
        for (std::size_t k = 0; k < out; ++k) {
            const std::size_t l = below(rng, alphabet.size() + 1);
            CounterOp op;
            switch (below(rng, 3)) {
                case 0: op = CounterOp::inc(0); break;
                case 1: op = CounterOp::dec(0); break;
                default: break;
            }
            transitions.push_back({"t" + std::to_string(transitions.size()), q, op,
                                   static_cast<StateId>(below(rng, states)),
                                   l == alphabet.size() ? kTau : alphabet[l]});
        }
    }
    return IntegerGame({"c"}, std::move(st), std::move(transitions), Completion::AllowStuck);
}

FiniteLTS random_lts(Rng& rng, std::size_t states, const std::vector<std::string>& alphabet) {
    FiniteLTS fs;
    for (std::size_t s = 0; s < states; ++s) fs.states.push_back("s" + std::to_string(s));
    for (StateId s = 0; s < states; ++s) {
        const std::size_t out = below(rng, 3);
        for (std::size_t k = 0; k < out; ++k) {
            // tau challenges are rarer than visible ones
            const std::size_t l = below(rng, alphabet.size() * 3 + 1);
            fs.edges.push_back({s, l == alphabet.size() * 3 ? kTau : alphabet[l % alphabet.size()],
                                static_cast<StateId>(below(rng, states))});
        }
    }
    return fs;
}

namespace {

// Concrete configurations with all values in [0, cap], indexed densely.
struct BoundedSpace {
    const IntegerGame& game;
    Value cap;
    std::size_t per_state = 1;

    BoundedSpace(const IntegerGame& g, Value c) : game(g), cap(c) {
        for (std::size_t i = 0; i < g.num_counters(); ++i) per_state *= static_cast<std::size_t>(cap + 1);
    }
    std::size_t size() const { return game.num_states() * per_state; }
    std::size_t index(const PartialConfig& g) const {
        std::size_t idx = 0;
        for (CounterId c = 0; c < game.num_counters(); ++c) idx = idx * (cap + 1) + static_cast<std::size_t>(g.values[c]);
        return g.state * per_state + idx;
    }
    PartialConfig config(std::size_t idx) const {
        PartialConfig g(static_cast<StateId>(idx / per_state), game.num_counters());
        std::size_t rest = idx % per_state;
        for (CounterId c = static_cast<CounterId>(game.num_counters()); c-- > 0;) {
            g.set(c, static_cast<Value>(rest % (cap + 1)));
            rest /= cap + 1;
        }
        return g;
    }
    bool inside(const PartialConfig& g) const {
        return std::all_of(g.values.begin(), g.values.end(), [&](Value v) { return v <= cap; });
    }
};

// Endpoints of weak responses, and whether some response path left the box.
struct Reach {
    std::vector<char> hit;
    bool escaped = false;
};

}  // namespace

Bounded bounded_weaksim(const FiniteLTS& fs, StateId s0, const IntegerGame& vass, StateId q0,
                        const std::vector<Value>& valuation, Value cap) {
    const BoundedSpace space(vass, cap);
    const std::size_t n = space.size();

    auto tau_closure = [&](const std::vector<char>& from, bool escaped) {
        Reach r{from, escaped};
        std::vector<std::size_t> stack;
        for (std::size_t i = 0; i < n; ++i)
            if (from[i]) stack.push_back(i);
        while (!stack.empty()) {
            const std::size_t x = stack.back();
            stack.pop_back();
            const PartialConfig g = space.config(x);
            for (TransitionId t : vass.outgoing(g.state)) {
                if (vass.transition(t).label != kTau) continue;
                auto next = vass_step(vass, g, t);
                if (!next) continue;
                if (!space.inside(*next)) {
                    r.escaped = true;
                    continue;
                }
                const std::size_t y = space.index(*next);
                if (!r.hit[y]) {
                    r.hit[y] = 1;
                    stack.push_back(y);
                }
            }
        }
        return r;
    };
    // responses[label][x]
    std::map<std::string, std::vector<Reach>> responses;
    std::vector<std::string> labels{kTau};
    for (const auto& e : fs.edges)
        if (std::find(labels.begin(), labels.end(), e.label) == labels.end()) labels.push_back(e.label);
    for (const auto& a : labels) {
        auto& per = responses[a];
        for (std::size_t x = 0; x < n; ++x) {
            std::vector<char> start(n, 0);
            start[x] = 1;
            Reach pre = tau_closure(start, false);
            if (a == kTau) {
                per.push_back(pre);
                continue;
            }
            std::vector<char> mid(n, 0);
            bool escaped = pre.escaped;
            for (std::size_t y = 0; y < n; ++y) {
                if (!pre.hit[y]) continue;
                const PartialConfig g = space.config(y);
                for (TransitionId t : vass.outgoing(g.state)) {
                    if (vass.transition(t).label != a) continue;
                    auto next = vass_step(vass, g, t);
                    if (!next) continue;
                    if (!space.inside(*next)) escaped = true;
                    else mid[space.index(*next)] = 1;
                }
            }
            per.push_back(tau_closure(mid, escaped));
        }
    }

    auto solve = [&](bool optimistic) {
        // rel[s * n + x]: s is simulated by configuration x
        std::vector<char> rel(fs.states.size() * n, 1);
        for (bool changed = true; changed;) {
            changed = false;
            for (StateId s = 0; s < fs.states.size(); ++s) {
                for (std::size_t x = 0; x < n; ++x) {
                    if (!rel[s * n + x]) continue;
                    for (const auto& e : fs.edges) {
                        if (e.source != s) continue;
                        const Reach& r = responses[e.label][x];
                        bool ok = optimistic && r.escaped;
                        for (std::size_t y = 0; y < n && !ok; ++y) ok = r.hit[y] && rel[e.target * n + y];
                        if (!ok) {
                            rel[s * n + x] = 0;
                            changed = true;
                            break;
                        }
                    }
                }
            }
        }
        return rel[s0 * n + space.index(make_concrete(q0, valuation))] != 0;
    };
    const bool hi = solve(true), lo = solve(false);
    if (hi == lo) return hi ? Bounded::True : Bounded::False;
    return Bounded::Unknown;
}

namespace {

using Set = std::vector<char>;

Set eval_mu(const BoundedSpace& space, const MuFormula& f, std::map<std::string, Set>& env, bool outside) {
    using K = MuFormula::Kind;
    const IntegerGame& vass = space.game;
    const std::size_t n = space.size();
    Set out(n, 0);
    auto modal = [&](const Set& body, bool diamond, std::size_t x) {
        const PartialConfig g = space.config(x);
        for (TransitionId t : vass.outgoing(g.state)) {
            auto next = vass_step(vass, g, t);
            if (!next) continue;
            const bool v = space.inside(*next) ? body[space.index(*next)] != 0 : outside;
            if (diamond && v) return true;
            if (!diamond && !v) return false;
        }
        return !diamond;
    };
    switch (f.kind) {
        case K::Atom:
            for (std::size_t x = 0; x < n; ++x) out[x] = vass.state(space.config(x).state).name == f.name;
            return out;
        case K::Player1:
            for (std::size_t x = 0; x < n; ++x) out[x] = vass.owner(space.config(x).state) == Player::P1;
            return out;
        case K::Var: return env.at(f.name);
        case K::And:
        case K::Or: {
            const Set a = eval_mu(space, *f.left, env, outside), b = eval_mu(space, *f.right, env, outside);
            for (std::size_t x = 0; x < n; ++x) out[x] = f.kind == K::And ? (a[x] && b[x]) : (a[x] || b[x]);
            return out;
        }
        case K::Diamond:
        case K::Box:
        case K::GuardedBox: {
            const Set body = eval_mu(space, *f.left, env, outside);
            for (std::size_t x = 0; x < n; ++x) {
                if (f.kind == K::GuardedBox && vass.owner(space.config(x).state) != Player::P1) continue;
                out[x] = modal(body, f.kind == K::Diamond, x);
            }
            return out;
        }
        case K::Mu:
        case K::Nu: {
            Set cur(n, f.kind == K::Nu ? 1 : 0);
            for (;;) {
                env[f.name] = cur;
                Set next = eval_mu(space, *f.left, env, outside);
                if (next == cur) break;
                cur = std::move(next);
            }
            env.erase(f.name);
            return cur;
        }
    }
    return out;
}

}  // namespace

Bounded bounded_mucalc(const IntegerGame& vass, const MuFormula& phi, StateId q, const std::vector<Value>& valuation,
                       Value cap) {
    const BoundedSpace space(vass, cap);
    const std::size_t x = space.index(make_concrete(q, valuation));
    std::map<std::string, Set> env;
    const bool lo = eval_mu(space, phi, env, false)[x] != 0;
    const bool hi = eval_mu(space, phi, env, true)[x] != 0;
    if (lo == hi) return lo ? Bounded::True : Bounded::False;
    return Bounded::Unknown;
}

MuPtr random_formula(Rng& rng, const IntegerGame& vass, int depth) {
    int fresh = 0;
    std::vector<std::string> scope;
    std::function<MuPtr(int)> gen = [&](int d) -> MuPtr {
        const std::uint64_t leaf_kinds = scope.empty() ? 2 : 3;
        if (d == 0 || below(rng, 5) == 0) {
            switch (below(rng, leaf_kinds)) {
                case 0: return MuFormula::atom(vass.state(static_cast<StateId>(below(rng, vass.num_states()))).name);
                case 1: return MuFormula::player1();
                default: return MuFormula::var(scope[below(rng, scope.size())]);
            }
        }
        switch (below(rng, 6)) {
            case 0: return MuFormula::conj(gen(d - 1), gen(d - 1));
            case 1: return MuFormula::disj(gen(d - 1), gen(d - 1));
            case 2: return MuFormula::diamond(gen(d - 1));
            case 3: return MuFormula::guarded_box(gen(d - 1));
            default: {
                const bool least = below(rng, 2) == 0;
                const std::string x = "X" + std::to_string(fresh++);
                scope.push_back(x);
                MuPtr body = gen(d - 1);
                scope.pop_back();
                return least ? MuFormula::mu(x, body) : MuFormula::nu(x, body);
            }
        }
    };
    return gen(depth);
}

IntegerGame random_mc_vass(Rng& rng, std::size_t states, std::size_t counters) {
    GameShape shape;
    shape.states = states;
    shape.counters = counters;
    shape.max_color = 0;
    shape.single_sided = true;
    shape.deadlock_free = below(rng, 4) != 0;
    return random_game(rng, shape);
}

}  // namespace testing_support
