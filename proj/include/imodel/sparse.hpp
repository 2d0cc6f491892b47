#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace imodel {

using ComponentId = std::uint32_t;

// Square sparse matrix stored as sorted (column, value) pairs per row.
// Zero values are never stored; setting an entry to zero removes it, so
// entry count always equals the number of structural nonzeros.
template <typename T>
class RowSparse {
public:
    struct Entry {
        ComponentId col;
        T value;
        bool operator==(const Entry&) const = default;
    };

    RowSparse() = default;
    explicit RowSparse(std::size_t n) : rows_(n) {}

    std::size_t size() const { return rows_.size(); }
    const std::vector<Entry>& row(ComponentId i) const { return rows_[i]; }

    T get(ComponentId i, ComponentId j) const {
        const auto& r = rows_[i];
        auto it = lower_bound(r, j);
        return (it != r.end() && it->col == j) ? it->value : T{};
    }

    void set(ComponentId i, ComponentId j, T value) {
        auto& r = rows_[i];
        auto it = lower_bound(r, j);
        if (it != r.end() && it->col == j) {
            if (value == T{}) {
                r.erase(it);
            } else {
                it->value = value;
            }
        } else if (value != T{}) {
            r.insert(it, Entry{j, value});
        }
    }

    void add(ComponentId i, ComponentId j, T delta) {
        if (delta == T{}) return;
        auto& r = rows_[i];
        auto it = lower_bound(r, j);
        if (it != r.end() && it->col == j) {
            it->value += delta;
            if (it->value == T{}) r.erase(it);
        } else {
            r.insert(it, Entry{j, delta});
        }
    }

    std::size_t nonzero_count() const {
        std::size_t total = 0;
        for (const auto& r : rows_) total += r.size();
        return total;
    }

    // Visits entries in row-major order.
    template <typename F>
    void for_each(F&& f) const {
        for (ComponentId i = 0; i < rows_.size(); ++i)
            for (const auto& e : rows_[i]) f(i, e.col, e.value);
    }

    bool operator==(const RowSparse&) const = default;

private:
    static typename std::vector<Entry>::iterator lower_bound(std::vector<Entry>& r, ComponentId j) {
        return std::lower_bound(r.begin(), r.end(), j,
                                [](const Entry& e, ComponentId c) { return e.col < c; });
    }
    static typename std::vector<Entry>::const_iterator lower_bound(const std::vector<Entry>& r,
                                                                   ComponentId j) {
        return std::lower_bound(r.begin(), r.end(), j,
                                [](const Entry& e, ComponentId c) { return e.col < c; });
    }

    std::vector<std::vector<Entry>> rows_;
};

}  // namespace imodel
