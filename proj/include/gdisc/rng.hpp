#pragma once

// Deterministic random numbers.  Every randomized pipeline takes a single
// top-level seed; child streams are derived as
//     child = splitmix(seed ^ fnv1a(tag) ^ (0x9e3779b97f4a7c15 * index))
// so results are reproducible across runs and independent of call order.

#include <cstdint>
#include <string_view>
#include <vector>

namespace gdisc {

class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound >= 1; unbiased via rejection.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    int range(int lo, int hi) {  // inclusive ends
        return lo + (int)below((uint64_t)(hi - lo + 1));
    }

    double real() { return (next() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    uint64_t state_;
};

inline uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= (unsigned char)c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Derive the seed of a named child stream.
inline uint64_t derive_seed(uint64_t seed, std::string_view tag, uint64_t index = 0) {
    return seed ^ fnv1a(tag) ^ (0x9e3779b97f4a7c15ull * (index + 1));
}

// Uniformly random injective map of k pattern vertices into n host vertices.
inline std::vector<int> random_injection(int k, int n, Rng& rng) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = 0; i < k; ++i) {
        int j = i + (int)rng.below((uint64_t)(n - i));
        std::swap(perm[i], perm[j]);
    }
    perm.resize(k);
    return perm;
}

}  // namespace gdisc
