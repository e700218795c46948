#include "entswap/statekit.hpp"

#include "entswap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace entswap {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

template <int N>
using SquareC = Eigen::Matrix<Complex, N, N>;

template <int N>
double hermiticity_defect(const SquareC<N>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <int N>
StateDiagnostics diagnose(const SquareC<N>& m) {
  StateDiagnostics d;
  d.hermiticity_defect = hermiticity_defect<N>(m);
  d.trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
  const SquareC<N> herm = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<SquareC<N>> solver(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

std::string format_defect(const char* what, double value) {
  std::ostringstream os;
  os.precision(6);
  os << what << " (" << value << ")";
  return os.str();
}

// Shared body of the two from_matrix factories.
template <int N>
SquareC<N> checked_density_matrix(const SquareC<N>& m) {
  if (!m.allFinite()) {
    throw InvalidParametersError("density matrix has non-finite entries", std::nan(""));
  }
  const double herm_defect = hermiticity_defect<N>(m);
  if (herm_defect > tolerance::kHermitian) {
    throw InvalidParametersError(format_defect("matrix is not Hermitian", herm_defect), std::nan(""));
  }
  const double trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_defect > tolerance::kTrace) {
    throw InvalidParametersError(format_defect("trace differs from 1", trace_defect), std::nan(""));
  }

  SquareC<N> herm = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<SquareC<N>> solver(herm);
  const auto& values = solver.eigenvalues();
  const double min_value = values.minCoeff();
  if (min_value < -tolerance::kPsdClamp) {
    throw InvalidParametersError(format_defect("matrix is not positive semidefinite, min eigenvalue", min_value),
                                 min_value);
  }
  if (min_value < 0.0) {
    Eigen::Matrix<double, N, 1> clamped = values.cwiseMax(0.0);
    clamped /= clamped.sum();
    herm = solver.eigenvectors() * clamped.template cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
    herm = (herm + herm.adjoint()) * 0.5;
  }
  return herm;
}

}  // namespace

std::string_view to_string(BellIndex index) {
  switch (index) {
    case BellIndex::phi_plus:
      return "phi+";
    case BellIndex::phi_minus:
      return "phi-";
    case BellIndex::psi_plus:
      return "psi+";
    case BellIndex::psi_minus:
      return "psi-";
  }
  return "?";
}

const Matrix2c& pauli(int index) {
  static const std::array<Matrix2c, 4> table = [] {
    std::array<Matrix2c, 4> t;
    const Complex i(0.0, 1.0);
    t[0] << 1.0, 0.0, 0.0, 1.0;
    t[1] << 0.0, 1.0, 1.0, 0.0;
    t[2] << 0.0, -i, i, 0.0;
    t[3] << 1.0, 0.0, 0.0, -1.0;
    return t;
  }();
  if (index < 0 || index > 3) {
    throw DomainError("Pauli index must be in 0..3, got " + std::to_string(index));
  }
  return table[static_cast<std::size_t>(index)];
}

TwoQubitState TwoQubitState::from_matrix(const Matrix4c& matrix) {
  return TwoQubitState(checked_density_matrix<4>(matrix));
}

double TwoQubitState::purity() const { return (matrix_ * matrix_).trace().real(); }

FourQubitState FourQubitState::from_matrix(const Matrix16c& matrix) {
  return FourQubitState(checked_density_matrix<16>(matrix));
}

std::array<double, 4> BdsParams::eigenvalues() const {
  return {(1.0 - t1 - t2 - t3) / 4.0, (1.0 - t1 + t2 + t3) / 4.0, (1.0 + t1 - t2 + t3) / 4.0,
          (1.0 + t1 + t2 - t3) / 4.0};
}

bool BdsParams::in_tetrahedron(double slack) const {
  const auto ev = eigenvalues();
  return *std::min_element(ev.begin(), ev.end()) >= -slack;
}

StateDiagnostics validate(const Matrix4c& matrix) { return diagnose<4>(matrix); }
StateDiagnostics validate(const Matrix16c& matrix) { return diagnose<16>(matrix); }

Eigen::Vector4cd bell_vector(BellIndex index) {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (index) {
    case BellIndex::phi_plus:
      v(0) = kInvSqrt2;
      v(3) = kInvSqrt2;
      break;
    case BellIndex::phi_minus:
      v(0) = kInvSqrt2;
      v(3) = -kInvSqrt2;
      break;
    case BellIndex::psi_plus:
      v(1) = kInvSqrt2;
      v(2) = kInvSqrt2;
      break;
    case BellIndex::psi_minus:
      v(1) = kInvSqrt2;
      v(2) = -kInvSqrt2;
      break;
  }
  return v;
}

TwoQubitState bell_state(BellIndex index) {
  const Eigen::Vector4cd v = bell_vector(index);
  // Entries are exactly 0 or +-1/2; rebuild them to avoid 1/sqrt2 squared round-off.
  Matrix4c m = v * v.adjoint();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double re = m(i, j).real();
      m(i, j) = std::abs(re) < 0.25 ? 0.0 : std::copysign(0.5, re);
    }
  }
  return TwoQubitState::from_matrix(m);
}

TwoQubitState maximally_mixed() { return TwoQubitState::from_matrix(Matrix4c::Identity() * 0.25); }

TwoQubitState make_werner(WernerParams params) {
  const double p = params.p;
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("Werner visibility must lie in [0, 1], got " + std::to_string(p));
  }
  const Matrix4c singlet = bell_state(BellIndex::psi_minus).matrix();
  return TwoQubitState::from_matrix(Matrix4c::Identity() * ((1.0 - p) / 4.0) + singlet * p);
}

TwoQubitState make_bell_diagonal(BdsParams params) {
  const auto ev = params.eigenvalues();
  const auto worst = std::min_element(ev.begin(), ev.end());
  if (!std::isfinite(params.t1) || !std::isfinite(params.t2) || !std::isfinite(params.t3)) {
    throw InvalidParametersError("Bell-diagonal correlations must be finite", std::nan(""));
  }
  if (*worst < -tolerance::kPsdClamp) {
    std::ostringstream os;
    os << "Bell-diagonal parameters (" << params.t1 << ", " << params.t2 << ", " << params.t3
       << ") lie outside the tetrahedron: eigenvalue " << (worst - ev.begin()) + 1 << " = " << *worst;
    throw InvalidParametersError(os.str(), *worst);
  }
  Matrix4c m = Matrix4c::Identity();
  m += params.t1 * kron(pauli(1), pauli(1));
  m += params.t2 * kron(pauli(2), pauli(2));
  m += params.t3 * kron(pauli(3), pauli(3));
  return TwoQubitState::from_matrix(m * 0.25);
}

TwoQubitState make_general(const BlochForm& bloch) {
  Matrix4c m = Matrix4c::Identity();
  for (int i = 0; i < 3; ++i) {
    m += bloch.r(i) * kron(pauli(i + 1), pauli(0));
    m += bloch.s(i) * kron(pauli(0), pauli(i + 1));
    for (int j = 0; j < 3; ++j) {
      m += bloch.T(i, j) * kron(pauli(i + 1), pauli(j + 1));
    }
  }
  return TwoQubitState::from_matrix(m * 0.25);
}

BlochForm pauli_decompose(const Matrix4c& matrix) {
  BlochForm b;
  for (int i = 0; i < 3; ++i) {
    b.r(i) = (matrix * kron(pauli(i + 1), pauli(0))).trace().real();
    b.s(i) = (matrix * kron(pauli(0), pauli(i + 1))).trace().real();
    for (int j = 0; j < 3; ++j) {
      b.T(i, j) = (matrix * kron(pauli(i + 1), pauli(j + 1))).trace().real();
    }
  }
  return b;
}

BlochForm pauli_decompose(const TwoQubitState& state) { return pauli_decompose(state.matrix()); }

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

Matrix16c kron(const Matrix4c& a, const Matrix4c& b) {
  Matrix16c out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    }
  }
  return out;
}

FourQubitState tensor(const TwoQubitState& left, const TwoQubitState& right) {
  return FourQubitState::from_matrix(kron(left.matrix(), right.matrix()));
}

Matrix4c partial_trace_mid(const Matrix16c& matrix) {
  Matrix4c out = Matrix4c::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int d = 0; d < 2; ++d) {
      for (int a2 = 0; a2 < 2; ++a2) {
        for (int d2 = 0; d2 < 2; ++d2) {
          Complex sum(0.0, 0.0);
          for (int mid = 0; mid < 4; ++mid) {
            sum += matrix(8 * a + 2 * mid + d, 8 * a2 + 2 * mid + d2);
          }
          out(2 * a + d, 2 * a2 + d2) = sum;
        }
      }
    }
  }
  return out;
}

TwoQubitState partial_trace_mid(const FourQubitState& state) {
  return TwoQubitState::from_matrix(partial_trace_mid(state.matrix()));
}

TwoQubitState apply_local(const TwoQubitState& state, int left_pauli, int right_pauli) {
  const Matrix4c u = kron(pauli(left_pauli), pauli(right_pauli));
  return TwoQubitState::from_matrix(u * state.matrix() * u.adjoint());
}

}  // namespace entswap
