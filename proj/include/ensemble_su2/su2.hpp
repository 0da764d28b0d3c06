#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace ensemble_su2 {

template <class Scalar>
using unitary2_t = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

template <class Scalar>
using pauli_vector_t = Eigen::Matrix<Scalar, 3, 1>;

using unitary2 = unitary2_t<double>;
using pauli_vector = pauli_vector_t<double>;

template <class Scalar = double>
unitary2_t<Scalar> pauli_x() {
  unitary2_t<Scalar> m;
  m << 0, 1, 1, 0;
  return m;
}

template <class Scalar = double>
unitary2_t<Scalar> pauli_y() {
  using c = std::complex<Scalar>;
  unitary2_t<Scalar> m;
  m << c(0, 0), c(0, -1), c(0, 1), c(0, 0);
  return m;
}

template <class Scalar = double>
unitary2_t<Scalar> pauli_z() {
  unitary2_t<Scalar> m;
  m << 1, 0, 0, -1;
  return m;
}

// exp(-i a.sigma) in closed form: cos(r) I - i sin(r)/r (a.sigma), r = |a|.
// Exactly unitary for any finite a; no series truncation.
template <class Scalar>
unitary2_t<Scalar> pauli_exp(const pauli_vector_t<Scalar>& a) {
  if (!a.allFinite()) throw std::invalid_argument("non-finite generator");
  using c = std::complex<Scalar>;
  const Scalar r = a.norm();
  unitary2_t<Scalar> m;
  if (r == Scalar(0)) {
    m.setIdentity();
    return m;
  }
  const Scalar cr = std::cos(r);
  const Scalar k = std::sin(r) / r;
  const Scalar x = k * a[0], y = k * a[1], z = k * a[2];
  m << c(cr, -z), c(-y, -x), c(y, -x), c(cr, z);
  return m;
}

inline unitary2 pauli_exp(double ax, double ay, double az) {
  return pauli_exp<double>(pauli_vector(ax, ay, az));
}

template <class DA, class DB>
auto multiply(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return (a * b).eval();
}

template <class D>
auto dagger(const Eigen::MatrixBase<D>& u) {
  return u.adjoint().eval();
}

template <class DA, class DB>
double frobenius_distance(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return (a - b).norm();
}

// |tr(A^dag B)| / 2: phase-insensitive companion metric in [0, 1].
template <class DA, class DB>
double trace_fidelity(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return 0.5 * std::abs((a.adjoint() * b).trace());
}

// Deterministic SU(2) representative: det = 1 and arg(entry 00) in (-pi/2, pi/2]
// when that entry is nonzero (otherwise the same rule applied to entry 10).
template <class D>
unitary2 canonicalize(const Eigen::MatrixBase<D>& u) {
  unitary2 m = u;
  const std::complex<double> det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  m /= std::sqrt(det);
  const std::complex<double> pivot = std::abs(m(0, 0)) > 1e-12 ? m(0, 0) : m(1, 0);
  const bool keep = pivot.real() > 0.0 || (pivot.real() == 0.0 && pivot.imag() >= 0.0);
  if (!keep) m = -m;
  return m;
}

struct euler_xyx_angles {
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
};

inline unitary2 euler_recompose(const euler_xyx_angles& e) {
  return pauli_exp(e.alpha, 0, 0) * pauli_exp(0, e.beta, 0) * pauli_exp(e.gamma, 0, 0);
}

// U = exp(-i alpha sx) exp(-i beta sy) exp(-i gamma sx) for U in SU(2).
// Quaternion components (u0, u1, u2, u3) of U = u0 I - i u.sigma satisfy
// u0 + i u1 = cos(beta) e^{i(alpha+gamma)}, u2 + i u3 = sin(beta) e^{i(alpha-gamma)},
// so beta lands in [0, pi/2] and the phases split into alpha and gamma.
template <class D>
euler_xyx_angles euler_xyx(const Eigen::MatrixBase<D>& u_in) {
  const unitary2 u = canonicalize(u_in);
  const double u0 = u(0, 0).real();
  const double u3 = -u(0, 0).imag();
  const double u1 = -u(0, 1).imag();
  const double u2 = u(1, 0).real();
  const std::complex<double> z1(u0, u1), z2(u2, u3);
  constexpr double tau = 2 * std::numbers::pi;
  auto wrap = [&](double x) { return x - tau * std::floor(x / tau); };
  euler_xyx_angles e;
  if (std::abs(z2) < 1e-9) {  // beta ~ 0: fold the x rotation into alpha
    e.alpha = wrap(std::arg(z1));
    e.beta = std::asin(std::min(1.0, std::abs(z2)));
    e.gamma = 0.0;
    return e;
  }
  const double s = std::abs(z1) < 1e-12 ? 0.0 : std::arg(z1);
  const double d = std::arg(z2);
  e.beta = std::atan2(std::abs(z2), std::abs(z1));
  e.alpha = wrap(0.5 * (s + d));
  e.gamma = wrap(0.5 * (s - d));
  return e;
}

}  // namespace ensemble_su2
