#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace sievekit {

/// Portable seeded generator.
///
/// The bit source is std::mt19937_64 seeded through std::seed_seq with the
/// 32-bit words {seed_lo, seed_hi, stream_lo, stream_hi}; both are fully
/// specified by the standard. Bounded integers use rejection sampling on the
/// raw 64-bit output and reals use the top 53 bits, so the sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform real in [0, 1).
    double uniform();

    /// Fisher-Yates, drawing j = below(i + 1) for i = n-1 down to 1.
    template <typename T>
    void shuffle(std::span<T> items)
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace sievekit
