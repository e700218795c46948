// Two-qubit density matrices: construction, validation and Pauli-basis algebra.
//
// Qubit order is big-endian: in a four-qubit product the tensor factors are
// 1 (x) 2 (x) 3 (x) 4 and the measuring repeater holds qubits 2 and 3. Basis
// index of |a b c d> is 8a + 4b + 2c + d.
//
// Bell phases: |Phi+-> = (|00> +- |11>)/sqrt2, |Psi+-> = (|01> +- |10>)/sqrt2.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string_view>

namespace entswap {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Matrix16c = Eigen::Matrix<Complex, 16, 16>;
using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

namespace tolerance {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
// Eigenvalues in [-kPsdClamp, 0) are treated as round-off and clamped to 0.
inline constexpr double kPsdClamp = 1e-10;
}  // namespace tolerance

enum class BellIndex { phi_plus, phi_minus, psi_plus, psi_minus };

inline constexpr std::array<BellIndex, 4> kAllBellIndices{
    BellIndex::phi_plus, BellIndex::phi_minus, BellIndex::psi_plus, BellIndex::psi_minus};

std::string_view to_string(BellIndex index);

// 0 = identity, 1 = sigma_x, 2 = sigma_y, 3 = sigma_z.
const Matrix2c& pauli(int index);

struct StateDiagnostics {
  double hermiticity_defect = 0.0;  // max |M_ij - conj(M_ji)|
  double trace_defect = 0.0;        // |Tr M - 1|
  double min_eigenvalue = 0.0;      // of the Hermitian part (M + M^dagger)/2
};

// Validated 4x4 density matrix. Immutable once built.
class TwoQubitState {
 public:
  // Throws InvalidParametersError when the matrix is not Hermitian, not unit
  // trace, or has an eigenvalue below -kPsdClamp. Small negative eigenvalues
  // are clamped and the matrix is reassembled and renormalized.
  static TwoQubitState from_matrix(const Matrix4c& matrix);

  const Matrix4c& matrix() const noexcept { return matrix_; }
  Complex operator()(int row, int col) const { return matrix_(row, col); }

  double purity() const;

 private:
  explicit TwoQubitState(const Matrix4c& matrix) : matrix_(matrix) {}
  Matrix4c matrix_;
};

// 16x16 intermediate for left (x) right. Same invariants as TwoQubitState.
class FourQubitState {
 public:
  static FourQubitState from_matrix(const Matrix16c& matrix);

  const Matrix16c& matrix() const noexcept { return matrix_; }

 private:
  explicit FourQubitState(const Matrix16c& matrix) : matrix_(matrix) {}
  Matrix16c matrix_;
};

// rho = 1/4 (I(x)I + sum r_i s_i(x)I + sum s_i I(x)s_i + sum T_ij s_i(x)s_j)
struct BlochForm {
  Vector3 r = Vector3::Zero();
  Vector3 s = Vector3::Zero();
  Matrix3 T = Matrix3::Zero();
};

struct WernerParams {
  double p = 0.0;  // visibility in [0, 1]
};

// Bell-diagonal correlation triple; the state is (1/4)(I + sum t_i s_i(x)s_i).
struct BdsParams {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;

  // (1-t1-t2-t3)/4, (1-t1+t2+t3)/4, (1+t1-t2+t3)/4, (1+t1+t2-t3)/4
  std::array<double, 4> eigenvalues() const;
  bool in_tetrahedron(double slack = tolerance::kPsdClamp) const;
};

StateDiagnostics validate(const Matrix4c& matrix);
inline StateDiagnostics validate(const TwoQubitState& state) { return validate(state.matrix()); }
StateDiagnostics validate(const Matrix16c& matrix);

TwoQubitState bell_state(BellIndex index);
Eigen::Vector4cd bell_vector(BellIndex index);

TwoQubitState maximally_mixed();
TwoQubitState make_werner(WernerParams params);
TwoQubitState make_bell_diagonal(BdsParams params);
TwoQubitState make_general(const BlochForm& bloch);

BlochForm pauli_decompose(const TwoQubitState& state);
BlochForm pauli_decompose(const Matrix4c& matrix);

Matrix4c kron(const Matrix2c& a, const Matrix2c& b);
Matrix16c kron(const Matrix4c& a, const Matrix4c& b);

FourQubitState tensor(const TwoQubitState& left, const TwoQubitState& right);

// Traces out qubits 2 and 3. Works on unnormalized operators; the result's
// trace equals the input's.
Matrix4c partial_trace_mid(const Matrix16c& matrix);
TwoQubitState partial_trace_mid(const FourQubitState& state);

// (s_a (x) s_b) rho (s_a (x) s_b)^dagger, Pauli indices 0..3.
TwoQubitState apply_local(const TwoQubitState& state, int left_pauli, int right_pauli);

}  // namespace entswap
