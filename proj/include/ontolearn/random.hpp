#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace ontolearn {

// std::mt19937_64 output is fixed by the standard but the distributions are
// not, so bounded draws and shuffles are done here to keep generated banks
// and session orders byte-identical across standard libraries.

// Derives an independent engine seed from a base seed and stream labels.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> labels);

// FNV-1a; stable across platforms, used to turn ids into stream labels.
std::uint64_t stable_hash(std::string_view text);

// Uniform integer in [0, bound). bound must be positive.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound);

template <typename T>
void stable_shuffle(std::vector<T>& items, std::mt19937_64& engine) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(engine, i));
        std::swap(items[i - 1], items[j]);
    }
}

// `count` distinct elements in draw order (partial Fisher-Yates).
template <typename T>
std::vector<T> stable_sample(std::vector<T> items, std::size_t count, std::mt19937_64& engine) {
    if (count > items.size()) count = items.size();
    for (std::size_t i = 0; i < count; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_below(engine, items.size() - i));
        std::swap(items[i], items[j]);
    }
    items.resize(count);
    return items;
}

}  // namespace ontolearn
