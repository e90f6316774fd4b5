#pragma once

#include <cstdint>
#include <vector>

#include "wakeford/group_set.hpp"

namespace wakeford {

/// SplitMix64 (Steele/Lea/Vigna). Every sampled sweep draws all of its
/// randomness from one of these, seeded from the run config, so results are
/// identical across platforms and compilers.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, n), unbiased via rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    /// Uniform integer in [lo, hi] inclusive.
    int range(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Uniform k-subset of {0,..,universe-1} (partial Fisher-Yates).
    GroupSet subset(int universe, int k) {
        std::vector<int> pool(static_cast<std::size_t>(universe));
        for (int i = 0; i < universe; ++i) pool[static_cast<std::size_t>(i)] = i;
        GroupSet out(universe);
        for (int i = 0; i < k; ++i) {
            int j = i + static_cast<int>(below(static_cast<std::uint64_t>(universe - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            out.add(pool[static_cast<std::size_t>(i)]);
        }
        return out;
    }

    /// Uniform k-subset of the given elements.
    GroupSet subset_of(const GroupSet& from, int k) {
        std::vector<int> pool = from.elements();
        GroupSet out(from.universe());
        int m = static_cast<int>(pool.size());
        for (int i = 0; i < k && i < m; ++i) {
            int j = i + static_cast<int>(below(static_cast<std::uint64_t>(m - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            out.add(pool[static_cast<std::size_t>(i)]);
        }
        return out;
    }

private:
    std::uint64_t state_;
};

} // namespace wakeford
