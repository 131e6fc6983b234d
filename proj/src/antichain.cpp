#include "vassgames/antichain.hpp"

#include <algorithm>

namespace vassgames {

Antichain Antichain::insert(const PartialConfig& g) const {
    Antichain r = *this;
    r.add(g);
    return r;
}

bool Antichain::add(const PartialConfig& g) {
    if (!elements_.empty() && (elements_.front().dom != g.dom || elements_.front().values.size() != g.values.size()))
        throw GameError("antichain insert: domain mismatch");
    if (covers(g)) return false;
    std::erase_if(elements_, [&](const PartialConfig& b) { return leq(g, b); });
    elements_.insert(std::lower_bound(elements_.begin(), elements_.end(), g), g);
    return true;
}

bool Antichain::covers(const PartialConfig& g) const {
    return std::any_of(elements_.begin(), elements_.end(), [&](const PartialConfig& a) { return leq(a, g); });
}

bool Ideal::contains(const PartialConfig& g) const {
    if (g.state != state || g.dom != counters) return false;
    for (std::size_t c = 0; c < bounds.size(); ++c) {
        if (!vassgames::contains(counters, static_cast<CounterId>(c))) continue;
        if (bounds[c] != kOmega && g.values[c] > bounds[c]) return false;
    }
    return true;
}

bool Ideal::subset_of(const Ideal& o) const {
    if (state != o.state || counters != o.counters) return false;
    for (std::size_t c = 0; c < bounds.size(); ++c) {
        if (o.bounds[c] == kOmega) continue;
        if (bounds[c] == kOmega || bounds[c] > o.bounds[c]) return false;
    }
    return true;
}

std::vector<Ideal> complement_ideals(const Antichain& antichain, CounterSet counters, StateId q,
                                     std::size_t num_counters) {
    for (const auto& a : antichain.elements())
        if (a.state != q || a.dom != counters) throw GameError("complement_ideals: state or domain mismatch");

    Ideal top{q, counters, std::vector<Value>(num_counters, kOmega)};
    for (std::size_t c = 0; c < num_counters; ++c)
        if (!contains(counters, static_cast<CounterId>(c))) top.bounds[c] = 0;
    std::vector<Ideal> current{top};

    for (const auto& a : antichain.elements()) {
        std::vector<Ideal> next;
        auto push = [&](Ideal cand) {
            for (const auto& i : next)
                if (cand.subset_of(i)) return;
            std::erase_if(next, [&](const Ideal& i) { return i.subset_of(cand); });
            next.push_back(std::move(cand));
        };
        for (const auto& ideal : current) {
            for (CounterId c = 0; c < num_counters; ++c) {
                if (!contains(counters, c) || a.values[c] < 1) continue;
                Ideal cut = ideal;
                const Value cap = a.values[c] - 1;
                cut.bounds[c] = cut.bounds[c] == kOmega ? cap : std::min(cut.bounds[c], cap);
                push(std::move(cut));
            }
        }
        current = std::move(next);
    }
    return current;
}

}  // namespace vassgames
