#include "vassgames/applications.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "vassgames/vass_solver.hpp"

namespace vassgames {

std::optional<StateId> FiniteLTS::find_state(const std::string& name) const {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) return std::nullopt;
    return static_cast<StateId>(it - states.begin());
}

void FiniteLTS::validate() const {
    for (const Edge& e : edges) {
        if (e.source >= states.size() || e.target >= states.size()) throw GameError("LTS edge with unknown state");
        if (e.label.empty()) throw GameError("LTS edge without label");
    }
}

namespace {

bool has_safe_move(const IntegerGame& game, StateId q) {
    for (TransitionId t : game.outgoing(q))
        if (game.transition(t).op.kind != CounterOp::Kind::Dec) return true;
    return false;
}

PartialConfig concrete(StateId q, std::span<const Value> valuation, std::size_t num_counters) {
    if (valuation.size() != num_counters) throw GameError("valuation must assign every counter");
    return make_concrete(q, valuation);
}

}  // namespace

WeakSimGame weaksim_game(const FiniteLTS& fs, StateId s0, const IntegerGame& vass, StateId q0) {
    fs.validate();
    if (s0 >= fs.states.size() || q0 >= vass.num_states()) throw GameError("unknown initial state");

    std::vector<std::string> alphabet{kTau};
    auto note = [&](const std::string& a) {
        if (std::find(alphabet.begin(), alphabet.end(), a) == alphabet.end()) alphabet.push_back(a);
    };
    for (const auto& e : fs.edges) note(e.label);
    for (const auto& t : vass.transitions()) {
        if (t.label.empty()) throw GameError("transition " + t.name + " has no label");
        note(t.label);
    }
    auto letter = [&](const std::string& a) {
        return static_cast<std::size_t>(std::find(alphabet.begin(), alphabet.end(), a) - alphabet.begin());
    };

    const std::size_t ns = fs.states.size(), nq = vass.num_states(), na = alphabet.size();
    std::vector<State> states;
    auto p1_id = [&](std::size_t s, std::size_t q) { return static_cast<StateId>(s * nq + q); };
    auto p0_id = [&](std::size_t s, std::size_t q) { return static_cast<StateId>(ns * nq + s * nq + q); };
    auto pa_id = [&](std::size_t s, std::size_t q, std::size_t a) {
        return static_cast<StateId>(2 * ns * nq + (s * nq + q) * na + a);
    };
    for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t q = 0; q < nq; ++q)
            states.push_back({fs.states[s] + "/" + vass.state(q).name + "/1", Player::P1, 2});
    for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t q = 0; q < nq; ++q)
            states.push_back({fs.states[s] + "/" + vass.state(q).name + "/0", Player::P0, 1});
    for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t q = 0; q < nq; ++q)
            for (std::size_t a = 0; a < na; ++a)
                states.push_back({fs.states[s] + "/" + vass.state(q).name + "^" + alphabet[a] + "/0", Player::P0, 1});
    const auto win0 = static_cast<StateId>(states.size());
    states.push_back({"win0", Player::P1, 2});
    const auto lose0 = static_cast<StateId>(states.size());
    states.push_back({"lose0", Player::P0, 1});

    std::vector<Transition> transitions;
    auto add = [&](StateId from, CounterOp op, StateId to) {
        transitions.push_back({"e" + std::to_string(transitions.size()), from, op, to, ""});
    };
    for (const auto& e : fs.edges)
        for (std::size_t q = 0; q < nq; ++q) add(p1_id(e.source, q), CounterOp::nop(), pa_id(e.target, q, letter(e.label)));
    for (std::size_t s = 0; s < ns; ++s) {
        for (const auto& t : vass.transitions()) {
            if (t.label == kTau) {
                for (std::size_t a = 0; a < na; ++a) add(pa_id(s, t.source, a), t.op, pa_id(s, t.target, a));
                add(p0_id(s, t.source), t.op, p0_id(s, t.target));
            } else {
                add(pa_id(s, t.source, letter(t.label)), t.op, p0_id(s, t.target));
            }
        }
        for (std::size_t q = 0; q < nq; ++q) {
            add(pa_id(s, q, letter(kTau)), CounterOp::nop(), p0_id(s, q));
            add(p0_id(s, q), CounterOp::nop(), p1_id(s, q));
        }
    }
    add(win0, CounterOp::nop(), win0);
    add(lose0, CounterOp::nop(), lose0);

    // Getting stuck loses. Player-1 states only have Nop moves; Player-0 states
    // may be stuck at zero when all their moves decrement.
    std::vector<std::vector<CounterOp::Kind>> out(states.size());
    for (const auto& t : transitions) out[t.source].push_back(t.op.kind);
    for (StateId q = 0; q < states.size(); ++q) {
        if (q == win0 || q == lose0) continue;
        const bool safe = std::any_of(out[q].begin(), out[q].end(),
                                      [](CounterOp::Kind k) { return k != CounterOp::Kind::Dec; });
        if (safe) continue;
        add(q, CounterOp::nop(), states[q].owner == Player::P1 ? win0 : lose0);
    }

    WeakSimGame result;
    result.game = IntegerGame(vass.counters(), std::move(states), std::move(transitions));
    result.initial = p1_id(s0, q0);
    result.win0 = win0;
    result.lose0 = lose0;
    for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t q = 0; q < nq; ++q) result.player1_states.push_back(p1_id(s, q));
    return result;
}

bool check_weaksim(const FiniteLTS& fs, StateId s0, const IntegerGame& vass, StateId q0,
                   std::span<const Value> valuation, const SolverOptions& opts) {
    const WeakSimGame w = weaksim_game(fs, s0, vass, q0);
    std::vector<std::int64_t> map;
    const StateId root = w.initial;
    const IntegerGame game = restrict_to_reachable(w.game, std::span(&root, 1), &map);
    ParetoSolver solver(game, opts);
    return solver.c_version(concrete(static_cast<StateId>(map[root]), valuation, vass.num_counters()));
}

Antichain weaksim_frontier(const FiniteLTS& fs, StateId s0, const IntegerGame& vass, StateId q0,
                           const SolverOptions& opts) {
    const WeakSimGame w = weaksim_game(fs, s0, vass, q0);
    std::vector<std::int64_t> map;
    const StateId root = w.initial;
    const IntegerGame game = restrict_to_reachable(w.game, std::span(&root, 1), &map);
    const auto r = static_cast<StateId>(map[root]);
    const Frontier f = pareto_single_sided_vass(game, all_counters(game.num_counters()), opts, std::span(&r, 1));
    Antichain result;
    for (const auto& g : f[r].elements()) {
        PartialConfig h = g;
        h.state = q0;
        result.add(h);
    }
    return result;
}

// ---- formulas ----

namespace {

MuPtr make(MuFormula::Kind kind, std::string name = {}, MuPtr left = {}, MuPtr right = {}) {
    auto f = std::make_shared<MuFormula>();
    f->kind = kind;
    f->name = std::move(name);
    f->left = std::move(left);
    f->right = std::move(right);
    return f;
}

}  // namespace

MuPtr MuFormula::atom(std::string q) { return make(Kind::Atom, std::move(q)); }
MuPtr MuFormula::player1() { return make(Kind::Player1); }
MuPtr MuFormula::var(std::string x) { return make(Kind::Var, std::move(x)); }
MuPtr MuFormula::conj(MuPtr a, MuPtr b) { return make(Kind::And, {}, std::move(a), std::move(b)); }
MuPtr MuFormula::disj(MuPtr a, MuPtr b) { return make(Kind::Or, {}, std::move(a), std::move(b)); }
MuPtr MuFormula::diamond(MuPtr a) { return make(Kind::Diamond, {}, std::move(a)); }
MuPtr MuFormula::box(MuPtr a) { return make(Kind::Box, {}, std::move(a)); }
MuPtr MuFormula::guarded_box(MuPtr a) { return make(Kind::GuardedBox, {}, std::move(a)); }
MuPtr MuFormula::mu(std::string x, MuPtr body) { return make(Kind::Mu, std::move(x), std::move(body)); }
MuPtr MuFormula::nu(std::string x, MuPtr body) { return make(Kind::Nu, std::move(x), std::move(body)); }

namespace {

class FormulaParser {
public:
    explicit FormulaParser(const std::string& text) : text_(text) { advance(); }

    MuPtr parse() {
        MuPtr f = formula();
        if (!tok_.empty()) fail("unexpected '" + tok_ + "'");
        return f;
    }

private:
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '#' || c == '$' ||
               c == '-';
    }

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        start_ = pos_;
        if (pos_ >= text_.size()) {
            tok_.clear();
            return;
        }
        for (const char* sym : {"<>", "[]", "/\\", "\\/"}) {
            if (text_.compare(pos_, 2, sym) == 0) {
                tok_ = sym;
                pos_ += 2;
                return;
            }
        }
        const char c = text_[pos_];
        if (c == '(' || c == ')' || c == '.') {
            tok_ = std::string(1, c);
            ++pos_;
            return;
        }
        if (!ident_char(c)) fail(std::string("unexpected character '") + c + "'");
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        tok_ = text_.substr(start_, pos_ - start_);
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw GameError("formula, column " + std::to_string(start_ + 1) + ": " + msg);
    }

    void expect(const std::string& t) {
        if (tok_ != t) fail("expected '" + t + "'" + (tok_.empty() ? " at end of input" : ", got '" + tok_ + "'"));
        advance();
    }

    MuPtr formula() {
        MuPtr f = conjunction();
        while (tok_ == "\\/") {
            advance();
            f = MuFormula::disj(f, conjunction());
        }
        return f;
    }

    MuPtr conjunction() {
        MuPtr f = unary();
        while (tok_ == "/\\") {
            advance();
            MuPtr g = unary();
            if (f->kind == MuFormula::Kind::Player1 && g->kind == MuFormula::Kind::Box)
                f = MuFormula::guarded_box(g->left);
            else if (g->kind == MuFormula::Kind::Player1 && f->kind == MuFormula::Kind::Box)
                f = MuFormula::guarded_box(f->left);
            else
                f = MuFormula::conj(f, g);
        }
        return f;
    }

    MuPtr unary() {
        if (tok_ == "<>") {
            advance();
            return MuFormula::diamond(unary());
        }
        if (tok_ == "[]") {
            advance();
            return MuFormula::box(unary());
        }
        if (tok_ == "(") {
            advance();
            MuPtr f = formula();
            expect(")");
            return f;
        }
        if (tok_ == "mu" || tok_ == "nu") {
            const bool least = tok_ == "mu";
            advance();
            if (tok_.empty() || !ident_char(tok_[0])) fail("expected a variable");
            std::string x = tok_;
            advance();
            expect(".");
            bound_.push_back(x);
            MuPtr body = formula();
            bound_.pop_back();
            return least ? MuFormula::mu(x, body) : MuFormula::nu(x, body);
        }
        if (tok_.empty()) fail("unexpected end of input");
        if (!ident_char(tok_[0])) fail("unexpected '" + tok_ + "'");
        std::string name = tok_;
        advance();
        if (name == "P1") return MuFormula::player1();
        if (std::find(bound_.begin(), bound_.end(), name) != bound_.end()) return MuFormula::var(name);
        return MuFormula::atom(name);
    }

    const std::string& text_;
    std::size_t pos_ = 0, start_ = 0;
    std::string tok_;
    std::vector<std::string> bound_;
};

}  // namespace

MuPtr parse_formula(const std::string& text) { return FormulaParser(text).parse(); }

std::string format_formula(const MuFormula& f) {
    using K = MuFormula::Kind;
    switch (f.kind) {
        case K::Atom:
        case K::Var: return f.name;
        case K::Player1: return "P1";
        case K::And: return "(" + format_formula(*f.left) + " /\\ " + format_formula(*f.right) + ")";
        case K::Or: return "(" + format_formula(*f.left) + " \\/ " + format_formula(*f.right) + ")";
        case K::Diamond: return "<>" + format_formula(*f.left);
        case K::Box: return "[]" + format_formula(*f.left);
        case K::GuardedBox: return "(P1 /\\ []" + format_formula(*f.left) + ")";
        case K::Mu: return "(mu " + f.name + ". " + format_formula(*f.left) + ")";
        case K::Nu: return "(nu " + f.name + ". " + format_formula(*f.left) + ")";
    }
    return {};
}

namespace {

void check_rec(const MuFormula& f, bool guarded, std::vector<std::string>& scope, std::set<std::string>& binders) {
    using K = MuFormula::Kind;
    switch (f.kind) {
        case K::Atom:
        case K::Player1: return;
        case K::Var:
            if (std::find(scope.begin(), scope.end(), f.name) == scope.end())
                throw GameError("free variable " + f.name);
            return;
        case K::And:
        case K::Or:
            check_rec(*f.left, guarded, scope, binders);
            check_rec(*f.right, guarded, scope, binders);
            return;
        case K::Box:
            if (guarded) throw GameError("unguarded box; write P1 /\\ [] f");
            [[fallthrough]];
        case K::Diamond:
        case K::GuardedBox: check_rec(*f.left, guarded, scope, binders); return;
        case K::Mu:
        case K::Nu:
            if (!binders.insert(f.name).second) throw GameError("variable " + f.name + " is bound twice");
            scope.push_back(f.name);
            check_rec(*f.left, guarded, scope, binders);
            scope.pop_back();
            return;
    }
}

// Subformula occurrences in preorder.
struct Node {
    const MuFormula* f;
    std::int64_t left = -1, right = -1;
    std::int64_t binder = -1;  // for variables
    int color = 0;
};

struct Flattened {
    std::vector<Node> nodes;

    explicit Flattened(const MuFormula& phi) {
        std::vector<std::pair<std::string, std::int64_t>> scope;
        build(phi, scope);
    }

    std::int64_t build(const MuFormula& f, std::vector<std::pair<std::string, std::int64_t>>& scope) {
        using K = MuFormula::Kind;
        const auto id = static_cast<std::int64_t>(nodes.size());
        nodes.push_back({&f});
        if (f.kind == K::Var) {
            for (auto it = scope.rbegin(); it != scope.rend(); ++it)
                if (it->first == f.name) {
                    nodes[id].binder = it->second;
                    break;
                }
        }
        if (f.kind == K::Mu || f.kind == K::Nu) scope.emplace_back(f.name, id);
        if (f.left) {
            const auto l = build(*f.left, scope);
            nodes[id].left = l;
        }
        if (f.right) {
            const auto r = build(*f.right, scope);
            nodes[id].right = r;
        }
        if (f.kind == K::Mu || f.kind == K::Nu) {
            scope.pop_back();
            // Least number of the right parity dominating every fixpoint inside.
            int inner = 0;
            for (auto k = id + 1; k < static_cast<std::int64_t>(nodes.size()); ++k) {
                const auto kind = nodes[k].f->kind;
                if (kind == K::Mu || kind == K::Nu) inner = std::max(inner, nodes[k].color);
            }
            const int parity = f.kind == K::Mu ? 1 : 0;
            nodes[id].color = inner % 2 == parity ? inner : inner + 1;
        }
        return id;
    }
};

}  // namespace

void check_formula(const MuFormula& f, bool guarded) {
    std::vector<std::string> scope;
    std::set<std::string> binders;
    check_rec(f, guarded, scope, binders);
}

MuGame mucalc_game(const IntegerGame& vass, const MuFormula& phi, bool single_sided) {
    using K = MuFormula::Kind;
    check_formula(phi, single_sided);
    if (single_sided && !is_single_sided(vass)) throw GameError("the vass is not single-sided for its partition");
    const Flattened flat(phi);
    for (const Node& n : flat.nodes)
        if (n.f->kind == K::Atom && !vass.find_state(n.f->name)) throw GameError("unknown state " + n.f->name);

    const std::size_t nq = vass.num_states(), nn = flat.nodes.size();
    auto id = [&](std::size_t q, std::size_t n) { return static_cast<StateId>(q * nn + n); };
    std::vector<State> states;
    for (StateId q = 0; q < nq; ++q) {
        const bool in_q1 = vass.owner(q) == Player::P1;
        for (std::size_t n = 0; n < nn; ++n) {
            const Node& node = flat.nodes[n];
            State s{vass.state(q).name + "@" + std::to_string(n), Player::P0, 0};
            switch (node.f->kind) {
                case K::Atom: s.color = vass.state(q).name == node.f->name ? 0 : 1; break;
                case K::Player1: s.color = in_q1 ? 0 : 1; break;
                case K::And:
                case K::Box: s.owner = Player::P1; break;
                case K::GuardedBox:
                    s.owner = Player::P1;
                    s.color = in_q1 ? 0 : 1;
                    break;
                case K::Mu:
                case K::Nu: s.color = node.color; break;
                default: break;
            }
            states.push_back(std::move(s));
        }
    }
    const auto win = static_cast<StateId>(states.size());
    states.push_back({"win0", Player::P1, 0});
    const auto lose = static_cast<StateId>(states.size());
    states.push_back({"lose0", Player::P0, 1});

    std::vector<Transition> transitions;
    auto add = [&](StateId from, CounterOp op, StateId to) {
        transitions.push_back({"e" + std::to_string(transitions.size()), from, op, to, ""});
    };
    for (StateId q = 0; q < nq; ++q) {
        for (std::size_t n = 0; n < nn; ++n) {
            const Node& node = flat.nodes[n];
            const StateId here = id(q, n);
            switch (node.f->kind) {
                case K::Atom:
                case K::Player1: add(here, CounterOp::nop(), here); break;
                case K::Var: add(here, CounterOp::nop(), id(q, node.binder)); break;
                case K::And:
                case K::Or:
                    add(here, CounterOp::nop(), id(q, node.left));
                    add(here, CounterOp::nop(), id(q, node.right));
                    break;
                case K::Mu:
                case K::Nu: add(here, CounterOp::nop(), id(q, node.left)); break;
                case K::Diamond:
                case K::Box: {
                    for (TransitionId t : vass.outgoing(q)) {
                        const Transition& tr = vass.transition(t);
                        add(here, tr.op, id(tr.target, node.left));
                    }
                    // No successor: a diamond fails, a box holds.
                    if (!has_safe_move(vass, q))
                        add(here, CounterOp::nop(), node.f->kind == K::Diamond ? lose : win);
                    break;
                }
                case K::GuardedBox:
                    if (vass.owner(q) == Player::P0) {
                        add(here, CounterOp::nop(), here);
                    } else {
                        for (TransitionId t : vass.outgoing(q)) {
                            const Transition& tr = vass.transition(t);
                            add(here, tr.op, id(tr.target, node.left));
                        }
                        if (vass.outgoing(q).empty()) add(here, CounterOp::nop(), win);
                    }
                    break;
            }
        }
    }
    add(win, CounterOp::nop(), win);
    add(lose, CounterOp::nop(), lose);

    MuGame result;
    result.game = IntegerGame(vass.counters(), std::move(states), std::move(transitions));
    for (StateId q = 0; q < nq; ++q) result.roots.push_back(id(q, 0));
    return result;
}

bool model_check(const IntegerGame& vass, const MuFormula& phi, StateId q, std::span<const Value> valuation,
                 const SolverOptions& opts) {
    if (q >= vass.num_states()) throw GameError("unknown state");
    const MuGame m = mucalc_game(vass, phi, true);
    std::vector<std::int64_t> map;
    const StateId root = m.roots[q];
    const IntegerGame game = restrict_to_reachable(m.game, std::span(&root, 1), &map);
    ParetoSolver solver(game, opts);
    return solver.c_version(concrete(static_cast<StateId>(map[root]), valuation, vass.num_counters()));
}

Frontier global_model_check(const IntegerGame& vass, const MuFormula& phi, const SolverOptions& opts) {
    const MuGame m = mucalc_game(vass, phi, true);
    std::vector<std::int64_t> map;
    const IntegerGame game = restrict_to_reachable(m.game, m.roots, &map);
    std::vector<StateId> roots;
    for (StateId r : m.roots) roots.push_back(static_cast<StateId>(map[r]));
    const Frontier f = pareto_single_sided_vass(game, all_counters(game.num_counters()), opts, roots);
    Frontier result(vass.num_states());
    for (StateId q = 0; q < vass.num_states(); ++q) {
        for (const auto& g : f[roots[q]].elements()) {
            PartialConfig h = g;
            h.state = q;
            result[q].add(h);
        }
    }
    return result;
}

}  // namespace vassgames
