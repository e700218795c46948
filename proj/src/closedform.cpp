#include "entswap/closedform.hpp"

#include "entswap/entmeasures.hpp"
#include "entswap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace entswap {

namespace {

// Slack on 3 p_f - 1 when deciding whether a chain stays entangled.
constexpr double kSwapLimitSlack = 1e-12;
constexpr std::size_t kMaxSubsetRepeaters = 30;

void check_etas(std::span<const double> etas) {
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (!(etas[i] >= 0.0 && etas[i] <= 1.0)) {
      throw DomainError("eta of repeater " + std::to_string(i + 1) + " must lie in [0, 1], got " +
                        std::to_string(etas[i]));
    }
  }
}

void check_lengths(std::size_t links, std::size_t repeaters) {
  if (links != repeaters + 1) {
    throw LengthMismatchError(std::to_string(repeaters) + " repeaters need " + std::to_string(repeaters + 1) +
                              " links, got " + std::to_string(links));
  }
}

}  // namespace

double product_normalization(std::span<const double> etas) {
  double n = 1.0;
  for (double eta : etas) {
    n *= 4.0 - 3.0 * eta;
  }
  return n;
}

double noise_scale(std::span<const double> etas) {
  check_etas(etas);
  double scale = 1.0;
  for (double eta : etas) {
    scale *= eta / (4.0 - 3.0 * eta);
  }
  return scale;
}

double subset_sum_normalization(std::span<const double> etas) {
  if (etas.size() > kMaxSubsetRepeaters) {
    throw DomainError("subset enumeration limited to " + std::to_string(kMaxSubsetRepeaters) + " repeaters");
  }
  const std::size_t n = etas.size();
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double term = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      term *= (mask >> i) & 1U ? 4.0 * (1.0 - etas[i]) : etas[i];
    }
    total += term;
  }
  return total;
}

double uniform_eta_normalization(double eta, std::size_t repeaters) {
  double tail = 0.0;
  for (std::size_t i = 0; i < repeaters; ++i) {
    tail += std::pow(eta, static_cast<double>(repeaters - 1 - i)) *
            std::pow(eta + 4.0 * (1.0 - eta), static_cast<double>(i));
  }
  return std::pow(eta, static_cast<double>(repeaters)) + 4.0 * (1.0 - eta) * tail;
}

double werner_final_visibility(const WernerChainQuery& q) {
  check_lengths(q.ps.size(), q.etas.etas.size());
  double p = noise_scale(q.etas.etas);
  for (std::size_t i = 0; i < q.ps.size(); ++i) {
    if (!(q.ps[i] >= 0.0 && q.ps[i] <= 1.0)) {
      throw DomainError("visibility of link " + std::to_string(i + 1) + " must lie in [0, 1], got " +
                        std::to_string(q.ps[i]));
    }
    p *= q.ps[i];
  }
  return p;
}

double werner_chain_concurrence(const WernerChainQuery& q) {
  return concurrence_werner(werner_final_visibility(q));
}

double werner_chain_fidelity(const WernerChainQuery& q) { return (1.0 + werner_final_visibility(q)) / 2.0; }

BdsParams bds_final_correlations(const BdsChainQuery& q) {
  check_lengths(q.ts.size(), q.etas.etas.size());
  const double scale = noise_scale(q.etas.etas);
  BdsParams out{scale, scale, scale};
  for (std::size_t i = 0; i < q.ts.size(); ++i) {
    const BdsParams& t = q.ts[i];
    if (!t.in_tetrahedron()) {
      const auto lambdas = t.eigenvalues();
      throw InvalidParametersError("link " + std::to_string(i + 1) + " lies outside the Bell-diagonal tetrahedron",
                                   *std::ranges::min_element(lambdas));
    }
    out.t1 *= t.t1;
    out.t2 *= t.t2;
    out.t3 *= t.t3;
  }
  if (q.etas.etas.size() % 2 == 1) {
    out.t2 = -out.t2;
  }
  return out;
}

BdsParams bds_final_correlations(const BdsChainQuery& q, CorrectionFrame frame) {
  BdsParams out = bds_final_correlations(q);
  if (frame == CorrectionFrame::singlet && q.etas.etas.size() % 2 == 1) {
    out.t1 = -out.t1;
    out.t3 = -out.t3;
  }
  return out;
}

double bds_chain_concurrence(const BdsChainQuery& q) { return concurrence_bds(bds_final_correlations(q)); }

double bds_chain_fidelity(const BdsChainQuery& q) {
  const BdsParams c = bds_final_correlations(q);
  const double n = std::abs(c.t1) + std::abs(c.t2) + std::abs(c.t3);
  return (1.0 + n / 3.0) / 2.0;
}

double eta_threshold() { return 2.0 / 3.0; }

double visibility_product_threshold() { return 1.0 / 3.0; }

SwapLimit max_entangled_swaps(double eta, double p) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError("eta must lie in (0, 1], got " + std::to_string(eta));
  }
  if (!(p > 1.0 / 3.0 && p <= 1.0)) {
    throw DomainError("visibility must lie in (1/3, 1], got " + std::to_string(p));
  }
  if (eta == 1.0 && p == 1.0) {
    return {.unbounded = true};
  }
  const double per_node = p * eta / (4.0 - 3.0 * eta);
  // p_f(n) = p * per_node^n strictly decreases, so the first failure ends the search.
  double visibility = p * per_node;
  std::size_t n = 0;
  while (3.0 * visibility - 1.0 > kSwapLimitSlack) {
    ++n;
    visibility *= per_node;
  }
  return {.unbounded = false, .n_max = n};
}

}  // namespace entswap
