#include "entswap/sampling.hpp"

#include "entswap/entmeasures.hpp"

#include <cmath>
#include <numbers>

namespace entswap {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::werner:
      return "werner";
    case Family::bds:
      return "bds";
    case Family::general:
      return "general";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "werner") return Family::werner;
  if (name == "bds") return Family::bds;
  if (name == "general") return Family::general;
  return std::nullopt;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

double SampleStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SampleStream::normal() {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  double u1 = uniform();
  while (u1 <= 0.0) {
    u1 = uniform();
  }
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

namespace {

SampledLink sample_werner(SampleStream& stream, bool entangled_only) {
  // 1 - u lies in (0, 1], which keeps p = 1 reachable and p = 1/3 excluded.
  const double p = entangled_only ? 1.0 / 3.0 + (2.0 / 3.0) * (1.0 - stream.uniform()) : stream.uniform();
  const WernerParams params{std::min(p, 1.0)};
  return {make_werner(params), params, 1};
}

SampledLink sample_bds(SampleStream& stream, bool entangled_only) {
  std::size_t attempts = 0;
  while (true) {
    ++attempts;
    BdsParams t{stream.uniform(-1.0, 1.0), stream.uniform(-1.0, 1.0), stream.uniform(-1.0, 1.0)};
    if (!t.in_tetrahedron(0.0)) continue;
    if (entangled_only && octahedron_separable(t)) continue;
    return {make_bell_diagonal(t), t, attempts};
  }
}

SampledLink sample_general(SampleStream& stream, bool entangled_only) {
  std::size_t attempts = 0;
  while (true) {
    ++attempts;
    Matrix4c g;
    for (int row = 0; row < 4; ++row) {
      for (int col = 0; col < 4; ++col) {
        const double re = stream.normal();
        const double im = stream.normal();
        g(row, col) = Complex(re, im);
      }
    }
    Matrix4c rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = (rho + rho.adjoint()) * 0.5;
    TwoQubitState state = TwoQubitState::from_matrix(rho);
    if (entangled_only && !is_entangled(concurrence(state))) continue;
    BlochForm bloch = pauli_decompose(state);
    return {std::move(state), std::move(bloch), attempts};
  }
}

}  // namespace

SampledLink sample_state(Family family, SampleStream& stream, bool entangled_only) {
  switch (family) {
    case Family::werner:
      return sample_werner(stream, entangled_only);
    case Family::bds:
      return sample_bds(stream, entangled_only);
    case Family::general:
      return sample_general(stream, entangled_only);
  }
  return sample_werner(stream, entangled_only);
}

}  // namespace entswap
