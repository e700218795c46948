// Density-matrix level entanglement swapping. This is the brute-force route:
// states are tensored to 16x16, projected with Bell measurement operators on
// the repeater's qubits (2, 3), and reduced back to qubits (1, 4).

#pragma once

#include "entswap/statekit.hpp"

#include <array>
#include <optional>
#include <vector>

namespace entswap {

// Which Bell state the per-outcome Pauli correction on the right-hand qubit
// maps every outcome to.
//  singlet:  psi- -> I, psi+ -> sz, phi- -> sx, phi+ -> sy. Werner inputs swap
//            to Werner outputs; Bell-diagonal triples combine as -(t_i u_i).
//  phi_plus: phi+ -> I, phi- -> sz, psi+ -> sx, psi- -> sy. Bell-diagonal
//            triples combine as (t1 u1, -t2 u2, t3 u3).
// Concurrence and teleportation fidelity do not depend on the frame.
enum class CorrectionFrame { singlet, phi_plus };

// paper: noisy update [eta rho_perfect + (1 - eta) I4] / (4 - 3 eta).
// povm:  the four noisy Bell operators applied as a POVM, outcomes corrected
//        and summed.
enum class SwapMode { paper, povm };

struct NoiseModel {
  std::vector<double> etas;  // one success probability per repeater

  static NoiseModel perfect(std::size_t repeaters) { return {std::vector<double>(repeaters, 1.0)}; }
  static NoiseModel uniform(std::size_t repeaters, double eta) { return {std::vector<double>(repeaters, eta)}; }
};

struct ChainSpec {
  std::vector<TwoQubitState> links;  // n + 1 links, source to target
  NoiseModel noise;                  // n repeaters
};

inline constexpr double kZeroProbability = 1e-14;

struct SwapOutcome {
  BellIndex outcome = BellIndex::psi_minus;
  double probability = 0.0;
  bool zero_probability = false;
  std::optional<TwoQubitState> corrected;  // empty when zero_probability
};

struct SwapResult {
  std::array<SwapOutcome, 4> per_outcome;
  TwoQubitState averaged;
  TwoQubitState paper_convention;  // equals averaged for a perfect swap
};

// M_k = eta |B_k><B_k| + (1 - eta)/4 I, ordered as kAllBellIndices.
std::array<Matrix4c, 4> noisy_bell_measurement_ops(double eta);

// Pauli index (0..3) applied to qubit 4 after outcome k.
int correction_pauli(BellIndex outcome, CorrectionFrame frame);

SwapResult swap_once_perfect(const TwoQubitState& left, const TwoQubitState& right,
                             CorrectionFrame frame = CorrectionFrame::singlet);

TwoQubitState swap_once(const TwoQubitState& left, const TwoQubitState& right, double eta,
                        CorrectionFrame frame = CorrectionFrame::singlet);

TwoQubitState swap_once_povm(const TwoQubitState& left, const TwoQubitState& right, double eta,
                             CorrectionFrame frame = CorrectionFrame::singlet);

TwoQubitState swap_with_mode(const TwoQubitState& left, const TwoQubitState& right, double eta, SwapMode mode,
                             CorrectionFrame frame = CorrectionFrame::singlet);

// Left fold over the links; errors are rethrown as ChainSwapError naming the
// 1-based repeater.
TwoQubitState chain_swap(const ChainSpec& spec, SwapMode mode = SwapMode::paper,
                         CorrectionFrame frame = CorrectionFrame::singlet);

}  // namespace entswap
