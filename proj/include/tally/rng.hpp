#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tally {

// Seeded draws with a fixed, portable mapping from engine output to ranges.
// std::uniform_int_distribution is implementation-defined, which would break
// replayability across standard libraries, so the mapping is spelled out here.
class SeededRng {
  public:
    explicit SeededRng(uint64_t seed) : engine_(seed) {}

    // Uniform index in [0, n); n >= 1. Rejection sampling, no modulo bias.
    size_t pick(size_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t draw;
        do {
            draw = engine_();
        } while (draw >= limit);
        return static_cast<size_t>(draw % n);
    }

    // Fisher-Yates with the portable pick above.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[pick(i)]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace tally
