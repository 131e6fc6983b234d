#include "vassgames/parity.hpp"

#include <algorithm>
#include <deque>

namespace vassgames {

using Vertex = FiniteParityGame::Vertex;
using Edge = FiniteParityGame::Edge;

Vertex FiniteParityGame::add_vertex(Player owner, int color) {
    owner_.push_back(owner);
    color_.push_back(color);
    out_.emplace_back();
    in_.emplace_back();
    return static_cast<Vertex>(owner_.size() - 1);
}

Edge FiniteParityGame::add_edge(Vertex from, Vertex to) {
    if (from >= num_vertices() || to >= num_vertices()) throw GameError("edge endpoint out of range");
    const auto e = static_cast<Edge>(source_.size());
    source_.push_back(from);
    target_.push_back(to);
    out_[from].push_back(e);
    in_[to].push_back(e);
    return e;
}

void FiniteParityGame::validate() const {
    for (Vertex v = 0; v < num_vertices(); ++v)
        if (out_[v].empty()) throw GameError("vertex " + std::to_string(v) + " has no successor");
}

std::vector<Vertex> ParitySolution::region(Player p) const {
    std::vector<Vertex> r;
    for (Vertex v = 0; v < winner.size(); ++v)
        if (winner[v] == p) r.push_back(v);
    return r;
}

namespace {

using Mask = std::vector<char>;

class Zielonka {
public:
    explicit Zielonka(const FiniteParityGame& g) : g_(g), win_(g.num_vertices()), strat_(g.num_vertices(), -1) {}

    ParitySolution run() {
        Mask all(g_.num_vertices(), 1);
        solve(all);
        ParitySolution sol;
        sol.winner.resize(g_.num_vertices());
        for (auto& s : sol.strategy) s.choice.assign(g_.num_vertices(), -1);
        for (Vertex v = 0; v < g_.num_vertices(); ++v) {
            sol.winner[v] = win_[v] ? Player::P1 : Player::P0;
            const Player o = g_.owner(v);
            std::int64_t e = strat_[v];
            if (o != sol.winner[v] || e < 0) e = g_.out_edges(v).front();
            sol.strategy[static_cast<int>(o)].choice[v] = e;
        }
        return sol;
    }

private:
    // Vertices of `active` from which `p` can force a visit to `target`.
    Mask attractor(const Mask& active, const Mask& target, Player p) {
        const std::size_t n = g_.num_vertices();
        Mask attr(n, 0);
        std::vector<int> remaining(n, 0);
        std::deque<Vertex> queue;
        for (Vertex v = 0; v < n; ++v) {
            if (!active[v]) continue;
            for (Edge e : g_.out_edges(v))
                if (active[g_.target(e)]) ++remaining[v];
            if (target[v]) {
                attr[v] = 1;
                queue.push_back(v);
            }
        }
        while (!queue.empty()) {
            const Vertex u = queue.front();
            queue.pop_front();
            for (Edge e : g_.in_edges(u)) {
                const Vertex v = g_.source(e);
                if (!active[v] || attr[v]) continue;
                if (g_.owner(v) == p) {
                    for (Edge f : g_.out_edges(v)) {
                        if (attr[g_.target(f)] && active[g_.target(f)]) {
                            strat_[v] = f;
                            break;
                        }
                    }
                    attr[v] = 1;
                    queue.push_back(v);
                } else if (--remaining[v] == 0) {
                    attr[v] = 1;
                    queue.push_back(v);
                }
            }
        }
        return attr;
    }

    void solve(const Mask& active) {
        const std::size_t n = g_.num_vertices();
        int d = -1;
        for (Vertex v = 0; v < n; ++v)
            if (active[v]) d = std::max(d, g_.color(v));
        if (d < 0) return;
        const Player p = d % 2 == 0 ? Player::P0 : Player::P1;
        const Player q = opponent(p);

        Mask top(n, 0);
        for (Vertex v = 0; v < n; ++v) top[v] = active[v] && g_.color(v) == d;
        Mask a = attractor(active, top, p);

        Mask rest(n, 0);
        bool rest_empty = true;
        for (Vertex v = 0; v < n; ++v) {
            rest[v] = active[v] && !a[v];
            rest_empty = rest_empty && !rest[v];
        }
        if (!rest_empty) solve(rest);

        Mask opp(n, 0);
        bool opp_empty = true;
        for (Vertex v = 0; v < n; ++v) {
            opp[v] = rest[v] && win_[v] == static_cast<char>(q);
            opp_empty = opp_empty && !opp[v];
        }

        if (opp_empty) {
            for (Vertex v = 0; v < n; ++v) {
                if (!active[v]) continue;
                win_[v] = static_cast<char>(p);
                if (top[v] && g_.owner(v) == p) {
                    for (Edge e : g_.out_edges(v)) {
                        if (active[g_.target(e)]) {
                            strat_[v] = e;
                            break;
                        }
                    }
                }
            }
            return;
        }

        Mask b = attractor(active, opp, q);
        Mask remainder(n, 0);
        bool remainder_empty = true;
        for (Vertex v = 0; v < n; ++v) {
            remainder[v] = active[v] && !b[v];
            remainder_empty = remainder_empty && !remainder[v];
            if (b[v]) win_[v] = static_cast<char>(q);
        }
        if (!remainder_empty) solve(remainder);
    }

    const FiniteParityGame& g_;
    std::vector<char> win_;
    std::vector<std::int64_t> strat_;
};

}  // namespace

ParitySolution solve_parity(const FiniteParityGame& game) {
    game.validate();
    return Zielonka(game).run();
}

bool verify_strategy(const FiniteParityGame& game, Player player, const Strategy& strategy,
                     std::span<const Vertex> claimed, std::uint64_t max_counter_strategies) {
    const std::size_t n = game.num_vertices();
    if (strategy.choice.size() != n) throw GameError("strategy size mismatch");
    Mask in_claim(n, 0);
    for (Vertex v : claimed) in_claim.at(v) = 1;
    for (Vertex v : claimed) {
        if (game.owner(v) != player) continue;
        const auto e = strategy.choice[v];
        if (e < 0 || static_cast<std::size_t>(e) >= game.num_edges() || game.source(static_cast<Edge>(e)) != v)
            throw GameError("strategy choice does not leave its vertex");
        if (!in_claim[game.target(static_cast<Edge>(e))]) throw GameError("strategy leaves the claimed region");
    }

    // Opponent vertices reachable from the claim under the fixed strategy.
    Mask reach(n, 0);
    std::deque<Vertex> queue(claimed.begin(), claimed.end());
    for (Vertex v : claimed) reach[v] = 1;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        auto visit = [&](Edge e) {
            const Vertex w = game.target(e);
            if (!reach[w]) {
                reach[w] = 1;
                queue.push_back(w);
            }
        };
        if (game.owner(v) == player) {
            const auto e = strategy.choice[v];
            if (e < 0) throw GameError("strategy undefined on a reachable vertex");
            visit(static_cast<Edge>(e));
        } else {
            for (Edge e : game.out_edges(v)) visit(e);
        }
    }
    std::vector<Vertex> choosers;
    std::uint64_t total = 1;
    for (Vertex v = 0; v < n; ++v) {
        if (!reach[v] || game.owner(v) == player) continue;
        choosers.push_back(v);
        total *= game.out_edges(v).size();
        if (total > max_counter_strategies) throw BudgetExceeded("verify_strategy: too many counter-strategies");
    }

    std::vector<std::size_t> pick(choosers.size(), 0);
    std::vector<Vertex> succ(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if (reach[v] && game.owner(v) == player) succ[v] = game.target(static_cast<Edge>(strategy.choice[v]));
    const int want = player == Player::P0 ? 0 : 1;
    std::vector<int> stamp(n, -1);

    for (;;) {
        for (std::size_t i = 0; i < choosers.size(); ++i)
            succ[choosers[i]] = game.target(game.out_edges(choosers[i])[pick[i]]);
        for (Vertex start : claimed) {
            // Walk the functional graph until a vertex repeats.
            std::vector<Vertex> path;
            Vertex v = start;
            int step = 0;
            std::fill(stamp.begin(), stamp.end(), -1);
            while (stamp[v] < 0) {
                stamp[v] = step++;
                path.push_back(v);
                v = succ[v];
            }
            int top = -1;
            for (std::size_t i = static_cast<std::size_t>(stamp[v]); i < path.size(); ++i)
                top = std::max(top, game.color(path[i]));
            if (top % 2 != want) return false;
        }
        std::size_t i = 0;
        while (i < choosers.size()) {
            if (++pick[i] < game.out_edges(choosers[i]).size()) break;
            pick[i++] = 0;
        }
        if (i == choosers.size()) break;
    }
    return true;
}

}  // namespace vassgames
