#include "ontolearn/random.hpp"

namespace ontolearn {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> labels) {
    std::uint64_t state = splitmix64(seed);
    for (auto label : labels) state = splitmix64(state ^ splitmix64(label));
    return state;
}

std::uint64_t stable_hash(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
    // Rejection on the top of the range removes modulo bias.
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
    std::uint64_t draw;
    do {
        draw = engine();
    } while (draw >= limit);
    return draw % bound;
}

}  // namespace ontolearn
