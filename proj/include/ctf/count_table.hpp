// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ctf {

/// Integer counts indexed by (year, key). Keys are either absolute thresholds
/// in FLOP or frontier distances in orders of magnitude.
struct CountTable {
    std::vector<int> years;
    std::vector<double> keys;
    std::vector<std::int64_t> cells;  // row-major: years x keys

    CountTable() = default;
    CountTable(std::vector<int> y, std::vector<double> k)
        : years(std::move(y)), keys(std::move(k)), cells(years.size() * keys.size(), 0) {}

    std::int64_t& at(std::size_t year_idx, std::size_t key_idx) {
        return cells.at(year_idx * keys.size() + key_idx);
    }
    std::int64_t at(std::size_t year_idx, std::size_t key_idx) const {
        return cells.at(year_idx * keys.size() + key_idx);
    }

    std::size_t year_index(int year) const {
        for (std::size_t i = 0; i < years.size(); ++i)
            if (years[i] == year) return i;
        throw std::out_of_range("year not present in count table");
    }
    std::size_t key_index(double key) const {
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (keys[i] == key) return i;
        throw std::out_of_range("key not present in count table");
    }

    /// Lookup by value rather than index.
    std::int64_t get(int year, double key) const { return at(year_index(year), key_index(key)); }
};

}  // namespace ctf
