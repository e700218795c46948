// Test-only reference implementations. Nothing here calls into the library's
// swap or measure code, so agreement with it is a real cross-check.

#pragma once

#include "entswap/statekit.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using entswap::Complex;
using entswap::Matrix2c;
using entswap::Matrix4c;

inline double min_eigenvalue(const Matrix4c& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(m);
  return es.eigenvalues().minCoeff();
}

// Wootters concurrence straight from the definition: square roots of the
// eigenvalues of rho (sy sy) rho* (sy sy), which is non-Hermitian.
inline double wootters(const Matrix4c& rho) {
  Matrix4c yy = Matrix4c::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix4c r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix4c> es(r);
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

// Bell vectors in the order phi+, phi-, psi+, psi-.
inline std::array<Eigen::Vector4cd, 4> bell_vectors() {
  const double h = 1.0 / std::sqrt(2.0);
  std::array<Eigen::Vector4cd, 4> v;
  v[0] << h, 0, 0, h;
  v[1] << h, 0, 0, -h;
  v[2] << 0, h, h, 0;
  v[3] << 0, h, -h, 0;
  return v;
}

inline Matrix2c sigma(int k) {
  Matrix2c m;
  const Complex i(0, 1);
  switch (k) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

// Swap by explicit index sums over the four-qubit amplitudes, qubit order
// (1, 2 | 3, 4), measuring (2, 3). corrections[k] is the Pauli index applied
// to qubit 4 after outcome k. Returns the unnormalized sum over outcomes.
inline Matrix4c brute_swap(const Matrix4c& left, const Matrix4c& right, const std::array<int, 4>& corrections) {
  const auto bells = bell_vectors();
  Matrix4c total = Matrix4c::Zero();
  for (int k = 0; k < 4; ++k) {
    Matrix4c post = Matrix4c::Zero();  // indices (a d, a' d')
    for (int a = 0; a < 2; ++a)
      for (int d = 0; d < 2; ++d)
        for (int ap = 0; ap < 2; ++ap)
          for (int dp = 0; dp < 2; ++dp) {
            Complex sum = 0;
            for (int b = 0; b < 2; ++b)
              for (int c = 0; c < 2; ++c)
                for (int bp = 0; bp < 2; ++bp)
                  for (int cp = 0; cp < 2; ++cp) {
                    sum += std::conj(bells[k](2 * b + c)) * left(2 * a + b, 2 * ap + bp) *
                           right(2 * c + d, 2 * cp + dp) * bells[k](2 * bp + cp);
                  }
            post(2 * a + d, 2 * ap + dp) = sum;
          }
    Matrix4c u = Matrix4c::Zero();
    const Matrix2c s = sigma(corrections[k]);
    for (int a = 0; a < 2; ++a)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) u(2 * a + i, 2 * a + j) = s(i, j);
    total += u * post * u.adjoint();
  }
  return total;
}

// Corrections mapping every outcome onto psi- and onto phi+ respectively.
inline constexpr std::array<int, 4> kToSinglet{2, 1, 3, 0};
inline constexpr std::array<int, 4> kToPhiPlus{0, 3, 1, 2};

inline Matrix4c perfect_swap(const Matrix4c& left, const Matrix4c& right, const std::array<int, 4>& corr) {
  const Matrix4c sum = brute_swap(left, right, corr);
  return sum / sum.trace().real();
}

// [eta rho + (1 - eta) I4] / (4 - 3 eta)
inline Matrix4c noisy(const Matrix4c& rho, double eta) {
  return (eta * rho + (1.0 - eta) * Matrix4c::Identity()) / (4.0 - 3.0 * eta);
}

// ---- Displayed formulas, transcribed term by term. ----

// Werner, perfect, in terms of link concurrences.
inline double werner_c13_ratio(double p1, double p2, double c12, double c23) {
  return 2.0 * (3 * p1 * p2 - 1) / ((3 * p1 - 1) * (3 * p2 - 1)) * c12 * c23;
}
inline double werner_c13(double p1, double p2) { return (3 * p1 * p2 - 1) / 2.0; }

// Werner, noisy, single swap.
inline double werner_c13_eta_ratio(double p1, double p2, double eta, double c12, double c23) {
  return 2.0 / (4 - 3 * eta) * ((eta * (3 * p1 * p2 - 1) - 4 * (1 - eta)) / ((3 * p1 - 1) * (3 * p2 - 1))) * c12 *
         c23;
}
inline double werner_c13_eta(double p1, double p2, double eta) {
  return 1.0 / (4 - 3 * eta) * ((eta * (3 * p1 * p2 - 1) - 4 * (1 - eta)) / 2.0);
}

// sum_{i=0}^{n-1} eta^(n-1-i) (eta + 4(1-eta))^i
inline double eta_tail(double eta, int n) {
  double s = 0;
  for (int i = 0; i <= n - 1; ++i) s += std::pow(eta, n - 1 - i) * std::pow(eta + 4 * (1 - eta), i);
  return s;
}
inline double uniform_N(double eta, int n) { return std::pow(eta, n) + 4 * (1 - eta) * eta_tail(eta, n); }

// sum over nonempty subsets S of 4^|S| prod_S (1 - eta) prod_rest eta
inline double subset_tail(const std::vector<double>& etas) {
  const int n = static_cast<int>(etas.size());
  double s = 0;
  for (int mask = 1; mask < (1 << n); ++mask) {
    double term = 1;
    for (int i = 0; i < n; ++i) term *= (mask >> i) & 1 ? 4 * (1 - etas[i]) : etas[i];
    s += term;
  }
  return s;
}
inline double product(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 1.0, std::multiplies<>());
}
inline double subset_N(const std::vector<double>& etas) { return product(etas) + subset_tail(etas); }

// Multi-node, identical links, perfect.
inline double chain_c_ratio_same_p(double p, int n, double c_link) {
  return std::pow(2.0, n) * (3 * std::pow(p, n + 1) - 1) * std::pow(c_link, n + 1) / std::pow(3 * p - 1, n + 1);
}
inline double chain_c_same_p(double p, int n) { return (3 * std::pow(p, n + 1) - 1) / 2.0; }

// Multi-node, identical links, same eta (visibility form).
inline double chain_c_same_p_eta(double p, double eta, int n) {
  const double num = std::pow(eta, n) * (3 * std::pow(p, n + 1) - 1) - 4 * (1 - eta) * eta_tail(eta, n);
  return num / (2 * uniform_N(eta, n));
}

// Multi-node, identical links, different etas (ratio form).
inline double chain_c_same_p_etas_ratio(double p, const std::vector<double>& etas, double c_link) {
  const int n = static_cast<int>(etas.size());
  const double num = product(etas) * (3 * std::pow(p, n + 1) - 1) - subset_tail(etas);
  return std::pow(2.0, n) / subset_N(etas) * num / std::pow(3 * p - 1, n + 1) * std::pow(c_link, n + 1);
}

// Multi-node, different p, perfect.
inline double chain_c_ratio_diff_p(const std::vector<double>& ps, const std::vector<double>& cs) {
  const int n = static_cast<int>(ps.size()) - 1;
  double denom = 1;
  for (double p : ps) denom *= 3 * p - 1;
  return std::pow(2.0, n) * (3 * product(ps) - 1) * product(cs) / denom;
}
inline double chain_c_diff_p(const std::vector<double>& ps) { return (3 * product(ps) - 1) / 2.0; }

// Multi-node, different p, same eta (ratio form, with the normalization's
// n - 1 upper limit in the numerator sum).
inline double chain_c_ratio_diff_p_eta(const std::vector<double>& ps, double eta, const std::vector<double>& cs) {
  const int n = static_cast<int>(ps.size()) - 1;
  double denom = 1;
  for (double p : ps) denom *= 3 * p - 1;
  const double num = std::pow(eta, n) * (3 * product(ps) - 1) - 4 * (1 - eta) * eta_tail(eta, n);
  return std::pow(2.0, n) / uniform_N(eta, n) * num / denom * product(cs);
}

// Multi-node, different p, different etas (ratio form).
inline double chain_c_ratio_diff_p_etas(const std::vector<double>& ps, const std::vector<double>& etas,
                                        const std::vector<double>& cs) {
  const int n = static_cast<int>(ps.size()) - 1;
  double denom = 1;
  for (double p : ps) denom *= 3 * p - 1;
  const double num = product(etas) * (3 * product(ps) - 1) - subset_tail(etas);
  return std::pow(2.0, n) / subset_N(etas) * num / denom * product(cs);
}

// Werner fidelity displays.
inline double werner_f13(double p1, double p2) { return (1 + p1 * p2) / 2.0; }
inline double werner_f13_ratio(double p1, double p2, double f12, double f23) {
  return 2.0 * (1 + p1 * p2) / ((1 + p1) * (1 + p2)) * f12 * f23;
}
inline double werner_f13_eta(double p1, double p2, double eta) {
  return 0.5 * (1 + eta * p1 * p2 / (eta + 4 * (1 - eta)));
}
inline double chain_f_ratio_same_p_eta(double p, double eta, int n, double f_link) {
  return std::pow(2.0, n) * (1 + std::pow(eta, n) * std::pow(p, n + 1) / uniform_N(eta, n)) /
         std::pow(1 + p, n + 1) * std::pow(f_link, n + 1);
}

// Bell-diagonal Lambda form. Links carry (t1, t2, t3); the chain's final
// eigenvalues are Lambda_k / N with the (-1)^n sign on the t2 product.
struct LambdaForm {
  double concurrence = 0;
  std::array<double, 4> Lambda{};  // unnormalized, descending
};

inline std::array<double, 4> bds_lambdas(double t1, double t2, double t3) {
  std::array<double, 4> l{(1 + t1 - t2 + t3) / 4, (1 - t1 + t2 + t3) / 4, (1 + t1 + t2 - t3) / 4,
                          (1 - t1 - t2 - t3) / 4};
  std::sort(l.begin(), l.end(), std::greater<>());
  return l;
}

// etas may be empty-valued 1.0 entries for perfect measurement.
inline LambdaForm bds_lambda_form(const std::vector<std::array<double, 3>>& ts, const std::vector<double>& etas) {
  const int n = static_cast<int>(etas.size());
  double P1 = 1, P2 = 1, P3 = 1;
  for (const auto& t : ts) {
    P1 *= t[0];
    P2 *= t[1];
    P3 *= t[2];
  }
  const double sgn = n % 2 ? -1.0 : 1.0;
  const double eta_prod = product(etas);
  const double tail = subset_tail(etas);
  const double N = eta_prod + tail;
  LambdaForm out;
  out.Lambda = {0.25 * (eta_prod * (1 + P1 - sgn * P2 + P3) + tail),
                0.25 * (eta_prod * (1 - P1 + sgn * P2 + P3) + tail),
                0.25 * (eta_prod * (1 + P1 + sgn * P2 - P3) + tail),
                0.25 * (eta_prod * (1 - P1 - sgn * P2 - P3) + tail)};
  std::sort(out.Lambda.begin(), out.Lambda.end(), std::greater<>());
  double link_ratio = 1;  // prod (lambda1 - lambda2 - lambda3 - lambda4) / prod C
  double c_prod = 1;
  for (const auto& t : ts) {
    const auto l = bds_lambdas(t[0], t[1], t[2]);
    const double diff = l[0] - l[1] - l[2] - l[3];
    link_ratio *= diff;
    c_prod *= std::max(0.0, diff);
  }
  const auto& L = out.Lambda;
  out.concurrence = std::max(0.0, (L[0] - L[1] - L[2] - L[3]) / link_ratio * c_prod) / N;
  return out;
}

// ---- Random draws shared by tests. ----

inline std::array<double, 3> random_tetrahedron_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (true) {
    const std::array<double, 3> t{u(rng), u(rng), u(rng)};
    const auto l = bds_lambdas(t[0], t[1], t[2]);
    if (l[3] >= 0) return t;
  }
}

inline Matrix4c random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix4c m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = Complex(g(rng), g(rng));
  Matrix4c rho = m * m.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

}  // namespace oracle
