#pragma once

#include <cstddef>
#include <vector>

#include "imodel/sparse.hpp"

namespace imodel {

// One failure cascade. Generation 0 holds the initial outages, generation
// k+1 the components that failed as a consequence of generation k. A
// component appears at most once per cascade; ids inside a generation are
// kept sorted and no stored generation is empty.
struct Cascade {
    std::vector<std::vector<ComponentId>> generations;

    std::size_t total_failures() const;
    // Failures in generations >= 1.
    std::size_t propagated_failures() const;

    bool operator==(const Cascade&) const = default;
};

struct CascadeSet {
    ComponentId n_components = 0;
    std::vector<Cascade> cascades;

    std::size_t size() const { return cascades.size(); }

    bool operator==(const CascadeSet&) const = default;
};

// Sorts ids within each generation and drops trailing empty generations.
// Idempotent; the canonical form every loader and the simulator produce.
Cascade normalized(Cascade c);

// Keeps only the first occurrence of a component that shows up in several
// generations, then drops generations this leaves empty by splicing the
// later ones forward. Meant for external data sources; simulator output
// never needs it.
Cascade dedupe_first(Cascade c);

// Throws ValidationError naming the first violated invariant. `index` is the
// cascade's position, used in messages only.
void validate_cascade(const Cascade& c, ComponentId n_components, std::size_t index);
void validate(const CascadeSet& cs);

// First m_u cascades. Throws ValidationError if fewer are available.
CascadeSet take_prefix(const CascadeSet& cs, std::size_t m_u);

}  // namespace imodel
