#include "entswap/entmeasures.hpp"

#include "entswap/errors.hpp"

#include <algorithm>
#include <cmath>

namespace entswap {

namespace {

const Matrix4c& spin_flip() {
  static const Matrix4c yy = kron(pauli(2), pauli(2));
  return yy;
}

}  // namespace

double concurrence(const TwoQubitState& state) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(state.matrix());
  const Eigen::Vector4d weights = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix4c w = solver.eigenvectors() * weights.cast<Complex>().asDiagonal();
  const Matrix4c tau = w.transpose() * spin_flip() * w;

  Eigen::JacobiSVD<Matrix4c> svd(tau);
  Eigen::Vector4d lambda = svd.singularValues();  // descending
  std::sort(lambda.data(), lambda.data() + 4, std::greater<>());
  return std::clamp(lambda(0) - lambda(1) - lambda(2) - lambda(3), 0.0, 1.0);
}

double concurrence_werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("Werner visibility must lie in [0, 1], got " + std::to_string(p));
  }
  return std::max(0.0, (3.0 * p - 1.0) / 2.0);
}

double concurrence_bds(const BdsParams& params) {
  auto ev = params.eigenvalues();
  const double lowest = *std::min_element(ev.begin(), ev.end());
  if (lowest < -tolerance::kPsdClamp) {
    throw InvalidParametersError("Bell-diagonal parameters lie outside the tetrahedron", lowest);
  }
  const double largest = *std::max_element(ev.begin(), ev.end());
  return std::clamp(2.0 * largest - 1.0, 0.0, 1.0);
}

double teleportation_fidelity(const BlochForm& bloch) {
  Eigen::JacobiSVD<Matrix3> svd(bloch.T);
  const double n = svd.singularValues().sum();
  return std::clamp((1.0 + n / 3.0) / 2.0, 0.5, 1.0);
}

double teleportation_fidelity(const TwoQubitState& state) {
  return teleportation_fidelity(pauli_decompose(state));
}

bool octahedron_separable(const BdsParams& params) {
  return std::abs(params.t1) + std::abs(params.t2) + std::abs(params.t3) <= 1.0;
}

bool is_entangled(double c) { return c > 0.0; }

bool is_useful_for_teleportation(double fidelity) { return fidelity > kClassicalFidelity; }

MeasureReport report(const TwoQubitState& state) {
  MeasureReport r;
  r.concurrence = concurrence(state);
  r.fidelity = teleportation_fidelity(state);
  r.entangled = is_entangled(r.concurrence);
  r.useful_for_teleportation = is_useful_for_teleportation(r.fidelity);
  return r;
}

}  // namespace entswap
