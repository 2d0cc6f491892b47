#include "imodel/cascade.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "imodel/errors.hpp"

namespace imodel {

std::size_t Cascade::total_failures() const {
    std::size_t total = 0;
    for (const auto& g : generations) total += g.size();
    return total;
}

std::size_t Cascade::propagated_failures() const {
    std::size_t total = 0;
    for (std::size_t g = 1; g < generations.size(); ++g) total += generations[g].size();
    return total;
}

Cascade normalized(Cascade c) {
    while (!c.generations.empty() && c.generations.back().empty()) c.generations.pop_back();
    for (auto& g : c.generations) std::sort(g.begin(), g.end());
    return c;
}

Cascade dedupe_first(Cascade c) {
    std::unordered_set<ComponentId> seen;
    std::vector<std::vector<ComponentId>> kept;
    for (auto& g : c.generations) {
        std::vector<ComponentId> filtered;
        for (ComponentId v : g)
            if (seen.insert(v).second) filtered.push_back(v);
        if (!filtered.empty()) kept.push_back(std::move(filtered));
    }
    c.generations = std::move(kept);
    return normalized(std::move(c));
}

void validate_cascade(const Cascade& c, ComponentId n_components, std::size_t index) {
    const std::string where = "cascade " + std::to_string(index);
    if (c.generations.empty() || c.generations.front().empty())
        throw ValidationError(where + ": generation 0 is empty");
    std::unordered_set<ComponentId> seen;
    for (std::size_t g = 0; g < c.generations.size(); ++g) {
        const auto& gen = c.generations[g];
        if (gen.empty())
            throw ValidationError(where + ": generation " + std::to_string(g) + " is empty");
        for (std::size_t k = 0; k < gen.size(); ++k) {
            if (gen[k] >= n_components)
                throw ValidationError(where + ": component id " + std::to_string(gen[k]) +
                                      " out of range (n = " + std::to_string(n_components) + ")");
            if (k > 0 && gen[k] <= gen[k - 1])
                throw ValidationError(where + ": generation " + std::to_string(g) +
                                      " is not sorted or repeats an id");
            if (!seen.insert(gen[k]).second)
                throw ValidationError(where + ": component " + std::to_string(gen[k]) +
                                      " fails in more than one generation");
        }
    }
}

void validate(const CascadeSet& cs) {
    for (std::size_t m = 0; m < cs.cascades.size(); ++m)
        validate_cascade(cs.cascades[m], cs.n_components, m);
}

CascadeSet take_prefix(const CascadeSet& cs, std::size_t m_u) {
    if (m_u > cs.size())
        throw ValidationError("requested " + std::to_string(m_u) + " cascades but only " +
                              std::to_string(cs.size()) + " are available");
    CascadeSet out;
    out.n_components = cs.n_components;
    out.cascades.assign(cs.cascades.begin(), cs.cascades.begin() + static_cast<std::ptrdiff_t>(m_u));
    return out;
}

}  // namespace imodel
