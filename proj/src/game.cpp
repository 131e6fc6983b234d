#include "vassgames/game.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace vassgames {

namespace {

std::string unique_name(const std::vector<State>& states, std::string base) {
    auto taken = [&](const std::string& n) {
        return std::any_of(states.begin(), states.end(), [&](const State& s) { return s.name == n; });
    };
    while (taken(base)) base += "'";
    return base;
}

}  // namespace

IntegerGame::IntegerGame(std::vector<std::string> counters, std::vector<State> states,
                         std::vector<Transition> transitions, Completion completion)
    : counters_(std::move(counters)), states_(std::move(states)), transitions_(std::move(transitions)) {
    if (counters_.size() > kMaxCounters) throw GameError("too many counters (max 32)");
    if (states_.empty()) throw GameError("no states");
    for (const auto& s : states_) {
        if (s.color < 0) throw GameError("negative color at state " + s.name);
    }
    for (const auto& t : transitions_) {
        if (t.source >= states_.size() || t.target >= states_.size())
            throw GameError("transition " + t.name + " references an undeclared state");
        if (!t.op.is_nop() && t.op.counter >= counters_.size())
            throw GameError("transition " + t.name + " references an undeclared counter");
    }

    auto rebuild_outgoing = [&] {
        outgoing_.assign(states_.size(), {});
        for (TransitionId t = 0; t < transitions_.size(); ++t) outgoing_[transitions_[t].source].push_back(t);
    };
    auto safe = [&](StateId q) {
        return std::any_of(outgoing_[q].begin(), outgoing_[q].end(), [&](TransitionId t) {
            return transitions_[t].op.kind != CounterOp::Kind::Dec;
        });
    };
    rebuild_outgoing();

    if (completion == Completion::AddSinks) {
        std::optional<StateId> lose0, win0;
        const std::size_t original = states_.size();
        for (StateId q = 0; q < original; ++q) {
            if (safe(q)) continue;
            auto& sink = states_[q].owner == Player::P0 ? lose0 : win0;
            if (!sink) {
                const bool p0 = states_[q].owner == Player::P0;
                State s{unique_name(states_, p0 ? "sink_lose0" : "sink_win0"), states_[q].owner, p0 ? 1 : 0};
                sink = static_cast<StateId>(states_.size());
                states_.push_back(s);
                transitions_.push_back({s.name + "_loop", *sink, CounterOp::nop(), *sink, "tau"});
            }
            transitions_.push_back({states_[q].name + "_stuck", q, CounterOp::nop(), *sink, "tau"});
        }
        rebuild_outgoing();
    }

    for (StateId q = 0; q < states_.size(); ++q) {
        if (outgoing_[q].empty() && completion != Completion::AllowStuck)
            throw GameError("state " + states_[q].name + " has no outgoing transition");
        if (!safe(q)) vass_deadlock_free_ = false;
    }
}

int IntegerGame::max_color() const {
    int m = 0;
    for (const auto& s : states_) m = std::max(m, s.color);
    return m;
}

std::optional<StateId> IntegerGame::find_state(const std::string& name) const {
    for (StateId q = 0; q < states_.size(); ++q)
        if (states_[q].name == name) return q;
    return std::nullopt;
}

std::optional<CounterId> IntegerGame::find_counter(const std::string& name) const {
    for (CounterId c = 0; c < counters_.size(); ++c)
        if (counters_[c] == name) return c;
    return std::nullopt;
}

std::optional<TransitionId> IntegerGame::find_transition(const std::string& name) const {
    for (TransitionId t = 0; t < transitions_.size(); ++t)
        if (transitions_[t].name == name) return t;
    return std::nullopt;
}

bool is_single_sided(const IntegerGame& game) {
    return std::all_of(game.transitions().begin(), game.transitions().end(), [&](const Transition& t) {
        return game.owner(t.source) == Player::P0 || t.op.is_nop();
    });
}

IntegerGame restrict_to_reachable(const IntegerGame& game, std::span<const StateId> roots,
                                  std::vector<std::int64_t>* state_map) {
    std::vector<std::int64_t> map(game.num_states(), -1);
    std::vector<StateId> order;
    std::deque<StateId> queue;
    auto visit = [&](StateId q) {
        if (map[q] >= 0) return;
        map[q] = static_cast<std::int64_t>(order.size());
        order.push_back(q);
        queue.push_back(q);
    };
    for (StateId r : roots) visit(r);
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (TransitionId t : game.outgoing(q)) visit(game.transition(t).target);
    }
    std::vector<State> states;
    for (StateId q : order) states.push_back(game.state(q));
    std::vector<Transition> transitions;
    for (const auto& t : game.transitions()) {
        if (map[t.source] < 0) continue;
        Transition copy = t;
        copy.source = static_cast<StateId>(map[t.source]);
        copy.target = static_cast<StateId>(map[t.target]);
        transitions.push_back(std::move(copy));
    }
    if (state_map) *state_map = map;
    return IntegerGame(game.counters(), std::move(states), std::move(transitions));
}

void PartialConfig::set(CounterId c, Value v) {
    if (v < 0) throw GameError("partial configurations hold nonnegative values");
    dom = with(dom, c);
    values.at(c) = v;
}

void PartialConfig::unset(CounterId c) {
    dom = without(dom, c);
    values.at(c) = 0;
}

bool PartialConfig::operator<(const PartialConfig& o) const {
    if (state != o.state) return state < o.state;
    if (dom != o.dom) return dom < o.dom;
    return values < o.values;
}

std::size_t PartialConfigHash::operator()(const PartialConfig& g) const {
    std::size_t h = std::hash<std::uint64_t>{}((std::uint64_t{g.state} << 32) | g.dom);
    for (Value v : g.values) h ^= std::hash<Value>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

PartialConfig make_concrete(StateId q, std::span<const Value> values) {
    PartialConfig g(q, values.size());
    for (CounterId c = 0; c < values.size(); ++c) g.set(c, values[c]);
    return g;
}

PartialConfig make_abstract(StateId q, std::size_t num_counters) { return PartialConfig(q, num_counters); }

bool leq(const PartialConfig& a, const PartialConfig& b) {
    if (a.state != b.state || a.dom != b.dom || a.values.size() != b.values.size()) return false;
    for (std::size_t c = 0; c < a.values.size(); ++c)
        if (a.values[c] > b.values[c]) return false;
    return true;
}

bool less(const PartialConfig& a, const PartialConfig& b) { return leq(a, b) && !(a == b); }

PartialConfig oplus(const PartialConfig& a, const PartialConfig& b) {
    if (a.state != b.state) throw GameError("oplus: configurations have different states");
    if (a.dom & b.dom) throw GameError("oplus: overlapping domains");
    if (a.values.size() != b.values.size()) throw GameError("oplus: counter sets differ");
    PartialConfig r = a;
    for (CounterId c = 0; c < b.values.size(); ++c)
        if (b.defined(c)) r.set(c, b.values[c]);
    return r;
}

PartialConfig restrict(const PartialConfig& g, CounterSet counters) {
    PartialConfig r = g;
    for (CounterId c = 0; c < g.values.size(); ++c)
        if (g.defined(c) && !contains(counters, c)) r.unset(c);
    return r;
}

std::string format_config(const IntegerGame& game, const PartialConfig& g) {
    std::ostringstream os;
    os << game.state(g.state).name << " (";
    bool first = true;
    for (CounterId c = 0; c < g.values.size(); ++c) {
        if (!g.defined(c)) continue;
        os << (first ? "" : ", ") << game.counters()[c] << "=" << g.values[c];
        first = false;
    }
    os << ")";
    return os.str();
}

}  // namespace vassgames
