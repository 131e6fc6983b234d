#include "vassgames/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace vassgames {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

[[noreturn]] void fail_at(std::size_t line, const std::string& msg) {
    throw GameError("line " + std::to_string(line) + ": " + msg);
}

std::optional<std::int64_t> to_int(std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

struct PendingTransition {
    std::size_t line;
    std::string name, source, target, label;
    CounterOp::Kind kind;
    std::string counter;
    std::int64_t repeat;
};

}  // namespace

IntegerGame parse_game(const std::string& text, Completion completion) {
    std::vector<std::string> counters;
    bool have_counters = false;
    std::vector<State> states;
    std::map<std::string, StateId> state_ids;
    std::vector<PendingTransition> pending;

    std::istringstream in(text);
    std::size_t lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        const auto words = split_ws(strip_comment(raw));
        if (words.empty()) continue;
        const std::string& kw = words[0];
        if (kw == "counters") {
            if (have_counters) fail_at(lineno, "counters declared twice");
            have_counters = true;
            for (std::size_t i = 1; i < words.size(); ++i) {
                if (std::find(counters.begin(), counters.end(), words[i]) != counters.end())
                    fail_at(lineno, "duplicate counter " + words[i]);
                counters.push_back(words[i]);
            }
        } else if (kw == "state") {
            if (words.size() < 2) fail_at(lineno, "state needs a name");
            State s{words[1], Player::P0, 0};
            for (std::size_t i = 2; i < words.size(); ++i) {
                const auto eq = words[i].find('=');
                if (eq == std::string::npos) fail_at(lineno, "expected key=value, got " + words[i]);
                const std::string key = words[i].substr(0, eq), val = words[i].substr(eq + 1);
                const auto n = to_int(val);
                if (key == "owner") {
                    if (!n || (*n != 0 && *n != 1)) fail_at(lineno, "owner must be 0 or 1");
                    s.owner = *n == 0 ? Player::P0 : Player::P1;
                } else if (key == "color") {
                    if (!n || *n < 0 || *n > 1'000'000) fail_at(lineno, "color must be a natural number");
                    s.color = static_cast<int>(*n);
                } else {
                    fail_at(lineno, "unknown state attribute " + key);
                }
            }
            if (!state_ids.emplace(s.name, static_cast<StateId>(states.size())).second)
                fail_at(lineno, "duplicate state " + s.name);
            states.push_back(std::move(s));
        } else if (kw == "trans") {
            // trans NAME: SRC OP DST [label=a]
            if (words.size() < 5 || words[1].size() < 2 || words[1].back() != ':')
                fail_at(lineno, "expected 'trans name: source op target'");
            PendingTransition t{lineno, words[1].substr(0, words[1].size() - 1), words[2], words[4], "",
                                CounterOp::Kind::Nop, "", 1};
            const std::string& op = words[3];
            if (op != "nop") {
                const auto open = op.find('(');
                if (open == std::string::npos || op.back() != ')') fail_at(lineno, "bad operation " + op);
                const std::string fn = op.substr(0, open);
                std::string args = op.substr(open + 1, op.size() - open - 2);
                if (fn == "inc") t.kind = CounterOp::Kind::Inc;
                else if (fn == "dec") t.kind = CounterOp::Kind::Dec;
                else fail_at(lineno, "bad operation " + op);
                const auto comma = args.find(',');
                if (comma != std::string::npos) {
                    const auto n = to_int(args.substr(comma + 1));
                    if (!n || *n < 1 || *n > 100'000) fail_at(lineno, "step count must be a positive integer");
                    t.repeat = *n;
                    args = args.substr(0, comma);
                }
                t.counter = args;
            }
            for (std::size_t i = 5; i < words.size(); ++i) {
                if (words[i].rfind("label=", 0) != 0) fail_at(lineno, "unexpected " + words[i]);
                t.label = words[i].substr(6);
                if (t.label.empty()) fail_at(lineno, "empty label");
            }
            if (!t.label.empty() && t.repeat > 1)
                fail_at(lineno, "a labeled transition must be a single step");
            pending.push_back(std::move(t));
        } else {
            fail_at(lineno, "unknown declaration " + kw);
        }
    }
    if (states.empty()) throw GameError("no states");

    std::vector<Transition> transitions;
    std::map<std::string, std::size_t> seen;
    const std::size_t declared = states.size();
    auto fresh_name = [&](const std::string& base) {
        std::string name = base;
        for (int k = 1; state_ids.count(name); ++k) name = base + "_" + std::to_string(k);
        return name;
    };
    for (const auto& p : pending) {
        if (!seen.emplace(p.name, p.line).second) fail_at(p.line, "duplicate transition " + p.name);
        auto src = state_ids.find(p.source);
        auto dst = state_ids.find(p.target);
        if (src == state_ids.end() || src->second >= declared) fail_at(p.line, "undeclared state " + p.source);
        if (dst == state_ids.end() || dst->second >= declared) fail_at(p.line, "undeclared state " + p.target);
        CounterOp op;
        if (p.kind != CounterOp::Kind::Nop) {
            auto it = std::find(counters.begin(), counters.end(), p.counter);
            if (it == counters.end()) fail_at(p.line, "undeclared counter " + p.counter);
            op = {p.kind, static_cast<CounterId>(it - counters.begin())};
        }
        StateId from = src->second;
        for (std::int64_t k = 1; k < p.repeat; ++k) {
            const std::string mid = fresh_name(p.name + "~" + std::to_string(k));
            const auto id = static_cast<StateId>(states.size());
            states.push_back({mid, states[src->second].owner, 0});
            state_ids.emplace(mid, id);
            transitions.push_back({k == 1 ? p.name : p.name + "~" + std::to_string(k - 1), from, op, id, ""});
            from = id;
        }
        transitions.push_back({p.repeat > 1 ? p.name + "~" + std::to_string(p.repeat - 1) : p.name, from, op,
                               dst->second, p.label});
    }
    return IntegerGame(std::move(counters), std::move(states), std::move(transitions), completion);
}

std::string print_game(const IntegerGame& game) {
    std::ostringstream os;
    os << "counters";
    for (const auto& c : game.counters()) os << ' ' << c;
    os << '\n';
    for (const auto& s : game.states())
        os << "state " << s.name << " owner=" << (s.owner == Player::P0 ? 0 : 1) << " color=" << s.color << '\n';
    for (const auto& t : game.transitions()) {
        os << "trans " << t.name << ": " << game.state(t.source).name << ' ';
        switch (t.op.kind) {
            case CounterOp::Kind::Nop: os << "nop"; break;
            case CounterOp::Kind::Inc: os << "inc(" << game.counters()[t.op.counter] << ")"; break;
            case CounterOp::Kind::Dec: os << "dec(" << game.counters()[t.op.counter] << ")"; break;
        }
        os << ' ' << game.state(t.target).name;
        if (!t.label.empty()) os << " label=" << t.label;
        os << '\n';
    }
    return os.str();
}

FiniteLTS parse_lts(const std::string& text) {
    FiniteLTS lts;
    struct Edge {
        std::size_t line;
        std::string s, a, t;
    };
    std::vector<Edge> edges;
    std::istringstream in(text);
    std::size_t lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        const auto words = split_ws(strip_comment(raw));
        if (words.empty()) continue;
        if (words[0] == "state" && words.size() == 2) {
            if (lts.find_state(words[1])) fail_at(lineno, "duplicate state " + words[1]);
            lts.states.push_back(words[1]);
        } else if (words[0] == "edge" && words.size() == 4) {
            edges.push_back({lineno, words[1], words[2], words[3]});
        } else {
            fail_at(lineno, "expected 'state s' or 'edge s a t'");
        }
    }
    if (lts.states.empty()) throw GameError("no states");
    for (const auto& e : edges) {
        auto s = lts.find_state(e.s), t = lts.find_state(e.t);
        if (!s) fail_at(e.line, "undeclared state " + e.s);
        if (!t) fail_at(e.line, "undeclared state " + e.t);
        lts.edges.push_back({*s, e.a, *t});
    }
    return lts;
}

std::string print_lts(const FiniteLTS& lts) {
    std::ostringstream os;
    for (const auto& s : lts.states) os << "state " << s << '\n';
    for (const auto& e : lts.edges) os << "edge " << lts.states[e.source] << ' ' << e.label << ' ' << lts.states[e.target] << '\n';
    return os.str();
}

PartialConfig parse_config(const IntegerGame& game, const std::string& text) {
    std::string cleaned = text;
    for (char& ch : cleaned)
        if (ch == '(' || ch == ')' || ch == ',') ch = ' ';
    const auto words = split_ws(cleaned);
    if (words.empty()) throw GameError("empty configuration");
    const auto q = game.find_state(words[0]);
    if (!q) throw GameError("unknown state " + words[0]);
    PartialConfig g(*q, game.num_counters());
    for (std::size_t i = 1; i < words.size(); ++i) {
        const auto eq = words[i].find('=');
        if (eq == std::string::npos) throw GameError("expected counter=value, got " + words[i]);
        const auto c = game.find_counter(words[i].substr(0, eq));
        if (!c) throw GameError("unknown counter " + words[i].substr(0, eq));
        const auto v = to_int(std::string_view(words[i]).substr(eq + 1));
        if (!v || *v < 0) throw GameError("counter values must be natural numbers");
        if (g.defined(*c)) throw GameError("counter " + words[i].substr(0, eq) + " given twice");
        g.set(*c, *v);
    }
    return g;
}

CounterSet parse_counters(const IntegerGame& game, const std::string& text) {
    std::string cleaned = text;
    for (char& ch : cleaned)
        if (ch == ',') ch = ' ';
    CounterSet set = 0;
    for (const auto& name : split_ws(cleaned)) {
        const auto c = game.find_counter(name);
        if (!c) throw GameError("unknown counter " + name);
        set = with(set, *c);
    }
    return set;
}

std::string format_valuation(const IntegerGame& game, const PartialConfig& g) {
    const std::string full = format_config(game, g);
    return full.substr(full.find('('));
}

std::string format_frontier(const IntegerGame& game, const Frontier& frontier) {
    std::ostringstream os;
    for (StateId q = 0; q < frontier.size(); ++q) {
        if (frontier[q].empty()) continue;
        os << game.state(q).name << ':';
        for (const auto& g : frontier[q].elements()) os << ' ' << format_valuation(game, g);
        os << '\n';
    }
    return os.str();
}

nlohmann::json frontier_json(const IntegerGame& game, const Frontier& frontier) {
    nlohmann::json out = nlohmann::json::object();
    for (StateId q = 0; q < frontier.size(); ++q) {
        nlohmann::json elems = nlohmann::json::array();
        for (const auto& g : frontier[q].elements()) {
            nlohmann::json v = nlohmann::json::object();
            for (CounterId c = 0; c < game.num_counters(); ++c)
                if (g.defined(c)) v[game.counters()[c]] = g.values[c];
            elems.push_back(std::move(v));
        }
        out[game.state(q).name] = std::move(elems);
    }
    return out;
}

std::string dump_out_game(const IntegerGame& game, const OutGame& out) {
    std::ostringstream os;
    os << print_game(out.game);
    os << "# root " << out.game.state(out.root).name << '\n';
    for (StateId q = 0; q < out.game.num_states(); ++q) {
        os << "# label " << out.game.state(q).name << " = " << format_config(game, out.state_labels[q]);
        if (out.conditions[q] == OutCondition::Uncovered) os << " uncovered";
        if (out.conditions[q] == OutCondition::Pumped) os << " pumped";
        os << '\n';
    }
    for (TransitionId e = 0; e < out.game.num_transitions(); ++e) {
        const auto origin = out.transition_labels[e];
        os << "# via " << out.game.transition(e).name << " = "
           << (origin < 0 ? std::string("-") : game.transition(static_cast<TransitionId>(origin)).name) << '\n';
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GameError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace vassgames
