#pragma once

#include <cstdint>

namespace ghlab {

/// splitmix64 step (Steele, Lea, Flood).  Used instead of <random> because
/// the standard distributions are implementation-defined and every sampled
/// point must be bit-identical across platforms and runs.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Stateless coefficient stream keyed by (seed, tag, index).  The tag keeps
/// unrelated samplers (group points, dual points, probe subgroup elements,
/// random polynomial coefficients) decorrelated under a shared seed.
class CoeffStream {
public:
  CoeffStream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    m_state = seed;
    (void)splitmix64(m_state);
    m_state ^= 0xD1B54A32D192ED03ULL * (tag + 1);
    (void)splitmix64(m_state);
    m_state ^= 0x8CB92BA72F3D8DD7ULL * (index + 1);
    (void)splitmix64(m_state);
  }

  std::uint64_t next_u64() { return splitmix64(m_state); }

  /// Uniform in [0, 1) with 53 random bits; exact on every IEEE-754 platform.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

private:
  std::uint64_t m_state;
};

}  // namespace ghlab
