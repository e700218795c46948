#pragma once

#include "entswap/statekit.hpp"

namespace entswap {

// Classical teleportation limit; fidelities must strictly exceed it.
inline constexpr double kClassicalFidelity = 2.0 / 3.0;

struct MeasureReport {
  double concurrence = 0.0;
  double fidelity = 0.5;
  bool entangled = false;                 // concurrence > 0
  bool useful_for_teleportation = false;  // fidelity > 2/3
};

// Wootters concurrence. The lambda_i (square roots of the eigenvalues of
// rho (sy(x)sy) rho* (sy(x)sy)) are taken as the singular values of
// W^T (sy(x)sy) W with rho = W W^dagger, which keeps them accurate to
// machine precision for nearly pure states.
double concurrence(const TwoQubitState& state);

// max(0, (3p - 1)/2)
double concurrence_werner(double p);

// max(0, 2 * largest eigenvalue - 1)
double concurrence_bds(const BdsParams& params);

// (1 + N/3)/2 with N the sum of singular values of the correlation matrix.
double teleportation_fidelity(const TwoQubitState& state);
double teleportation_fidelity(const BlochForm& bloch);

// |t1| + |t2| + |t3| <= 1, boundary counted as separable.
bool octahedron_separable(const BdsParams& params);

bool is_entangled(double concurrence);
bool is_useful_for_teleportation(double fidelity);

MeasureReport report(const TwoQubitState& state);

}  // namespace entswap
