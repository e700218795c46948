// Seeded sampling of link states.
//
// Every sample index owns an independent stream: the 64-bit seed of stream i
// is splitmix64(seed + 0x9E3779B97F4A7C15 * (i + 1)) and feeds std::mt19937_64,
// whose output sequence is fixed by the C++ standard. Uniforms use the top 53
// bits of each draw and normals use Box-Muller, so results do not depend on
// the standard library's distribution classes or on evaluation order.

#pragma once

#include "entswap/statekit.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <variant>

namespace entswap {

enum class Family { werner, bds, general };

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view name);

using LinkParams = std::variant<WernerParams, BdsParams, BlochForm>;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index) : engine_(stream_seed(seed, index)) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

struct SampledLink {
  TwoQubitState state;
  LinkParams params;
  std::size_t attempts = 1;  // draws consumed by rejection sampling
};

// werner:  p uniform on [0, 1], or (1/3, 1] when entangled_only.
// bds:     t uniform on [-1, 1]^3, rejected until inside the tetrahedron
//          (and outside the octahedron when entangled_only).
// general: G G^dagger / Tr(G G^dagger) with G a 4x4 matrix of independent
//          complex Gaussians (Hilbert-Schmidt measure); rejected until
//          entangled when entangled_only.
SampledLink sample_state(Family family, SampleStream& stream, bool entangled_only = false);

}  // namespace entswap
