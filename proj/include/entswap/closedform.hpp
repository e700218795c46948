// Closed-form results for Werner and Bell-diagonal repeater chains.
//
// Every formula reduces to one of two quantities: the final Werner visibility
// or the final Bell-diagonal correlation triple. A repeater with success
// probability eta multiplies correlations by eta / (4 - 3 eta), so a chain
// scales them by prod(eta_i) / prod(4 - 3 eta_i). The product in the
// denominator is the subset-sum normalization sum_S 4^|S| prod_{i in S}(1 - eta_i)
// prod_{i not in S} eta_i written in closed form.

#pragma once

#include "entswap/statekit.hpp"
#include "entswap/swapcore.hpp"

#include <optional>
#include <span>
#include <vector>

namespace entswap {

struct WernerChainQuery {
  std::vector<double> ps;  // n + 1 link visibilities
  NoiseModel etas;         // n repeaters, eta = 1 for a perfect node
};

struct BdsChainQuery {
  std::vector<BdsParams> ts;  // n + 1 links
  NoiseModel etas;
};

// prod eta_i / prod (4 - 3 eta_i); 1 for an empty chain.
double noise_scale(std::span<const double> etas);

// prod (4 - 3 eta_i)
double product_normalization(std::span<const double> etas);

// Subset-sum form of the same normalization, enumerated explicitly. 2^n terms.
double subset_sum_normalization(std::span<const double> etas);

// eta^n + 4(1 - eta) sum_{i<n} eta^(n-1-i) (eta + 4(1 - eta))^i
double uniform_eta_normalization(double eta, std::size_t repeaters);

double werner_final_visibility(const WernerChainQuery& q);
double werner_chain_concurrence(const WernerChainQuery& q);
double werner_chain_fidelity(const WernerChainQuery& q);

// (scale prod t1, scale (-1)^n prod t2, scale prod t3): the phi_plus frame.
BdsParams bds_final_correlations(const BdsChainQuery& q);
// Same triple expressed in either correction frame; singlet flips t1 and t3
// by (-1)^n relative to phi_plus.
BdsParams bds_final_correlations(const BdsChainQuery& q, CorrectionFrame frame);
double bds_chain_concurrence(const BdsChainQuery& q);
double bds_chain_fidelity(const BdsChainQuery& q);

// Single-swap eta at and below which no input yields entanglement: 2/3.
double eta_threshold();

// Perfect-measurement bound on prod p_i for entanglement: 1/3.
double visibility_product_threshold();

struct SwapLimit {
  bool unbounded = false;
  std::size_t n_max = 0;  // meaningful only when !unbounded
};

// Largest n with 3 p^(n+1) eta^n > (4 - 3 eta)^n for identical Werner links.
// eta in (0, 1], p in (1/3, 1].
SwapLimit max_entangled_swaps(double eta, double p);

}  // namespace entswap
