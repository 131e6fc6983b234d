#pragma once

// Explicit finite parity games under the max-color condition: Player 0 wins a
// play iff the highest color seen infinitely often is even.

#include <cstdint>
#include <span>
#include <vector>

#include "vassgames/game.hpp"

namespace vassgames {

class FiniteParityGame {
public:
    using Vertex = std::uint32_t;
    using Edge = std::uint32_t;

    Vertex add_vertex(Player owner, int color);
    Edge add_edge(Vertex from, Vertex to);

    std::size_t num_vertices() const { return owner_.size(); }
    std::size_t num_edges() const { return source_.size(); }
    Player owner(Vertex v) const { return owner_[v]; }
    int color(Vertex v) const { return color_[v]; }
    Vertex source(Edge e) const { return source_[e]; }
    Vertex target(Edge e) const { return target_[e]; }
    std::span<const Edge> out_edges(Vertex v) const { return out_[v]; }
    std::span<const Edge> in_edges(Vertex v) const { return in_[v]; }

    /// Throws GameError if some vertex has no successor.
    void validate() const;

private:
    std::vector<Player> owner_;
    std::vector<int> color_;
    std::vector<Vertex> source_, target_;
    std::vector<std::vector<Edge>> out_, in_;
};

/// Positional strategy: chosen edge per vertex, -1 where undefined.
struct Strategy {
    std::vector<std::int64_t> choice;
};

struct ParitySolution {
    std::vector<Player> winner;
    Strategy strategy[2];

    std::vector<FiniteParityGame::Vertex> region(Player p) const;
};

/// Zielonka's recursive algorithm. Attractor ties go to the smallest edge index.
ParitySolution solve_parity(const FiniteParityGame& game);

/// Checks that `strategy` wins for `player` from every vertex of `claimed`
/// against every positional counter-strategy. Throws GameError if the strategy
/// is malformed or leaves `claimed`, BudgetExceeded if the enumeration is
/// larger than `max_counter_strategies`.
bool verify_strategy(const FiniteParityGame& game, Player player, const Strategy& strategy,
                     std::span<const FiniteParityGame::Vertex> claimed,
                     std::uint64_t max_counter_strategies = 50'000'000);

}  // namespace vassgames
