#pragma once

// Upward-closed sets by their minimal elements, and downward-closed sets as
// finite unions of ideals.

#include <map>
#include <vector>

#include "vassgames/game.hpp"

namespace vassgames {

/// Pairwise-incomparable configurations sharing one domain. Elements are kept
/// sorted, so two antichains denoting the same set compare equal.
class Antichain {
public:
    Antichain() = default;

    const std::vector<PartialConfig>& elements() const { return elements_; }
    bool empty() const { return elements_.empty(); }
    std::size_t size() const { return elements_.size(); }

    /// Returns a new antichain with `g` inserted (no-op when dominated).
    Antichain insert(const PartialConfig& g) const;
    /// In-place variant of insert; returns true when the set changed.
    bool add(const PartialConfig& g);

    /// Some element is below `g`.
    bool covers(const PartialConfig& g) const;

    bool operator==(const Antichain& o) const { return elements_ == o.elements_; }

private:
    std::vector<PartialConfig> elements_;
};

/// Winning-set frontier: one antichain per state.
using Frontier = std::vector<Antichain>;

inline constexpr Value kOmega = -1;

/// Downward-closed set { g | dom(g) = counters, g(c) <= bounds[c] } at one
/// state; kOmega marks an unbounded coordinate.
struct Ideal {
    StateId state = 0;
    CounterSet counters = 0;
    std::vector<Value> bounds;

    bool contains(const PartialConfig& g) const;
    /// Componentwise inclusion with omega maximal.
    bool subset_of(const Ideal& o) const;
    bool operator==(const Ideal& o) const = default;
};

/// Finite set of ideals whose union is the complement of the upward closure of
/// `antichain` among configurations with domain `counters` at state `q`.
std::vector<Ideal> complement_ideals(const Antichain& antichain, CounterSet counters, StateId q,
                                     std::size_t num_counters);

}  // namespace vassgames
