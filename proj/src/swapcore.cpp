#include "entswap/swapcore.hpp"

#include "entswap/errors.hpp"

#include <cmath>
#include <string>

namespace entswap {

namespace {

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("measurement success probability eta must lie in [0, 1], got " + std::to_string(eta));
  }
}

// I (x) P (x) I for P acting on the middle two qubits.
Matrix16c embed_mid(const Matrix4c& op) {
  Matrix16c out = Matrix16c::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int d = 0; d < 2; ++d) {
      for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 4; ++col) {
          out(8 * a + 2 * row + d, 8 * a + 2 * col + d) = op(row, col);
        }
      }
    }
  }
  return out;
}

const std::array<Matrix16c, 4>& embedded_bell_projectors() {
  static const std::array<Matrix16c, 4> table = [] {
    std::array<Matrix16c, 4> t;
    for (std::size_t k = 0; k < 4; ++k) {
      const Eigen::Vector4cd v = bell_vector(kAllBellIndices[k]);
      t[k] = embed_mid(v * v.adjoint());
    }
    return t;
  }();
  return table;
}

Matrix4c correct(const Matrix4c& m, BellIndex outcome, CorrectionFrame frame) {
  const Matrix4c u = kron(pauli(0), pauli(correction_pauli(outcome, frame)));
  return u * m * u.adjoint();
}

Matrix4c normalized(const Matrix4c& m) { return m / m.trace().real(); }

}  // namespace

std::array<Matrix4c, 4> noisy_bell_measurement_ops(double eta) {
  check_eta(eta);
  std::array<Matrix4c, 4> ops;
  for (std::size_t k = 0; k < 4; ++k) {
    const Eigen::Vector4cd v = bell_vector(kAllBellIndices[k]);
    ops[k] = eta * (v * v.adjoint()) + Matrix4c::Identity() * ((1.0 - eta) / 4.0);
  }
  return ops;
}

int correction_pauli(BellIndex outcome, CorrectionFrame frame) {
  if (frame == CorrectionFrame::singlet) {
    switch (outcome) {
      case BellIndex::psi_minus:
        return 0;
      case BellIndex::psi_plus:
        return 3;
      case BellIndex::phi_minus:
        return 1;
      case BellIndex::phi_plus:
        return 2;
    }
  } else {
    switch (outcome) {
      case BellIndex::phi_plus:
        return 0;
      case BellIndex::phi_minus:
        return 3;
      case BellIndex::psi_plus:
        return 1;
      case BellIndex::psi_minus:
        return 2;
    }
  }
  return 0;
}

SwapResult swap_once_perfect(const TwoQubitState& left, const TwoQubitState& right, CorrectionFrame frame) {
  const FourQubitState joint = tensor(left, right);
  const auto& projectors = embedded_bell_projectors();

  std::array<SwapOutcome, 4> outcomes;
  Matrix4c sum = Matrix4c::Zero();
  for (std::size_t k = 0; k < 4; ++k) {
    SwapOutcome& o = outcomes[k];
    o.outcome = kAllBellIndices[k];
    const Matrix16c projected = projectors[k] * joint.matrix() * projectors[k];
    const Matrix4c reduced = partial_trace_mid(projected);
    o.probability = reduced.trace().real();
    if (o.probability < kZeroProbability) {
      o.zero_probability = true;
      continue;
    }
    const Matrix4c corrected = correct(reduced, o.outcome, frame);
    o.corrected = TwoQubitState::from_matrix(corrected / o.probability);
    sum += corrected;
  }
  TwoQubitState averaged = TwoQubitState::from_matrix(normalized(sum));
  return SwapResult{outcomes, averaged, averaged};
}

TwoQubitState swap_once(const TwoQubitState& left, const TwoQubitState& right, double eta, CorrectionFrame frame) {
  check_eta(eta);
  const SwapResult perfect = swap_once_perfect(left, right, frame);
  if (eta == 1.0) {
    return perfect.averaged;
  }
  // Identity enters with trace 4, hence the 4 - 3 eta normalization.
  const Matrix4c mixed = eta * perfect.averaged.matrix() + (1.0 - eta) * Matrix4c::Identity();
  return TwoQubitState::from_matrix(mixed / (4.0 - 3.0 * eta));
}

TwoQubitState swap_once_povm(const TwoQubitState& left, const TwoQubitState& right, double eta,
                             CorrectionFrame frame) {
  const auto ops = noisy_bell_measurement_ops(eta);
  const FourQubitState joint = tensor(left, right);
  Matrix4c sum = Matrix4c::Zero();
  for (std::size_t k = 0; k < 4; ++k) {
    const Matrix4c reduced = partial_trace_mid(embed_mid(ops[k]) * joint.matrix());
    sum += correct(reduced, kAllBellIndices[k], frame);
  }
  sum = (sum + sum.adjoint()) * 0.5;
  return TwoQubitState::from_matrix(normalized(sum));
}

TwoQubitState swap_with_mode(const TwoQubitState& left, const TwoQubitState& right, double eta, SwapMode mode,
                             CorrectionFrame frame) {
  return mode == SwapMode::paper ? swap_once(left, right, eta, frame) : swap_once_povm(left, right, eta, frame);
}

TwoQubitState chain_swap(const ChainSpec& spec, SwapMode mode, CorrectionFrame frame) {
  const std::size_t repeaters = spec.noise.etas.size();
  if (repeaters < 1) {
    throw LengthMismatchError("a chain needs at least one repeater");
  }
  if (spec.links.size() != repeaters + 1) {
    throw LengthMismatchError("chain with " + std::to_string(repeaters) + " repeaters needs " +
                              std::to_string(repeaters + 1) + " links, got " + std::to_string(spec.links.size()));
  }
  TwoQubitState state = spec.links.front();
  for (std::size_t i = 0; i < repeaters; ++i) {
    try {
      state = swap_with_mode(state, spec.links[i + 1], spec.noise.etas[i], mode, frame);
    } catch (const std::exception& e) {
      throw ChainSwapError(i + 1, e.what());
    }
  }
  return state;
}

}  // namespace entswap
