#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rota {

// Deterministic, splittable randomness.
//
// Every random choice in the library is drawn from an RngStream that is
// derived from a user-supplied 64-bit seed plus a path of integer labels.
// Streams with different paths are independent for our purposes, and the
// mapping (seed, path) -> bits is fixed: it does not depend on platform,
// thread count, or evaluation order.  std::uniform_int_distribution is
// avoided on purpose (its output is implementation-defined); bounded draws
// use explicit rejection below.

namespace detail {

// splitmix64 finalizer: the standard 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

class RngStream {
  public:
    explicit RngStream(std::uint64_t seed)
        : state_(detail::mix64(seed ^ 0xa02139f86c3cf1ebULL)),
          engine_(state_) {}

    // Child stream identified by an integer label.  Children of distinct
    // labels, and the parent itself, produce unrelated sequences.
    RngStream split(std::uint64_t label) const {
        return RngStream(detail::mix64(state_ + 0x632be59bd9b4e019ULL * (label + 1)));
    }

    RngStream split(std::uint64_t a, std::uint64_t b) const { return split(a).split(b); }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform draw from [0, bound) by rejection; bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1)
            return 0;
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
        for (;;) {
            std::uint64_t x = engine_();
            if (x < limit)
                return x % bound;
        }
    }

    // Fisher-Yates shuffle driven by this stream (std::shuffle would pull in
    // uniform_int_distribution, which is not reproducible across libraries).
    template <class T> void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    std::vector<std::uint32_t> permutation(std::uint32_t n) {
        std::vector<std::uint32_t> p(n);
        for (std::uint32_t i = 0; i < n; ++i)
            p[i] = i;
        shuffle(p);
        return p;
    }

  private:
    std::uint64_t state_;
    std::mt19937_64 engine_;
};

} // namespace rota
