#pragma once

#include <cstdint>
#include <random>

namespace svarkit {

/// Seedable generator with a platform-independent output stream.
///
/// Uniform draws come from std::mt19937_64, whose output sequence is fixed by
/// the C++ standard. Doubles in [0, 1) take the top 53 bits of one draw.
/// Normal draws use the basic Box-Muller transform on two uniforms (with
/// u1 mapped to (0, 1]), returning the cosine variate first and caching the
/// sine variate. std::normal_distribution is avoided because its algorithm
/// is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform();
    double normal();

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// SplitMix64 finalizer of (base + index): independent seeds for replication
/// `index` of an experiment seeded with `base`.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t index);

}  // namespace svarkit
