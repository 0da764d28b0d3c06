#include <doctest.h>

#include <numbers>
#include <random>

#include "ensemble_su2/su2.hpp"
#include "oracles.hpp"

using namespace ensemble_su2;
using test_oracle::matrix2c;
constexpr double pi = std::numbers::pi;

TEST_SUITE("su2") {

TEST_CASE("pauli matrices") {
  CHECK(pauli_x()(0, 1) == std::complex<double>(1, 0));
  CHECK(pauli_y()(0, 1) == std::complex<double>(0, -1));
  CHECK(pauli_y()(1, 0) == std::complex<double>(0, 1));
  CHECK(pauli_z()(1, 1) == std::complex<double>(-1, 0));
  CHECK((pauli_x() * pauli_y() - pauli_y() * pauli_x() -
         std::complex<double>(0, 2) * pauli_z()).norm() == 0.0);
}

TEST_CASE("pauli_exp closed-form values") {
  CHECK(pauli_exp(0, 0, 0) == unitary2::Identity());

  const unitary2 rx = pauli_exp(pi / 2, 0, 0);  // [[0,-i],[-i,0]]
  CHECK(std::abs(rx(0, 0)) <= 1e-16);
  CHECK(std::abs(rx(0, 1) - std::complex<double>(0, -1)) <= 1e-15);

  const unitary2 ry = pauli_exp(0, pi / 2, 0);  // [[0,-1],[1,0]]
  CHECK(std::abs(ry(0, 1) - std::complex<double>(-1, 0)) <= 1e-15);
  CHECK(std::abs(ry(1, 0) - std::complex<double>(1, 0)) <= 1e-15);

  const unitary2 rz = pauli_exp(0, 0, pi / 2);  // diag(-i, i)
  CHECK(std::abs(rz(0, 0) - std::complex<double>(0, -1)) <= 1e-15);
  CHECK(std::abs(rz(1, 1) - std::complex<double>(0, 1)) <= 1e-15);
  CHECK(std::abs(rz(0, 1)) == 0.0);
}

TEST_CASE("pauli_exp matches the series exponential") {
  std::mt19937 rng(91);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  double worst = 0;
  for (int k = 0; k < 200; ++k) {
    const double x = dist(rng), y = dist(rng), z = dist(rng);
    const matrix2c ref = test_oracle::series_expm(test_oracle::minus_i_dot_sigma(x, y, z));
    worst = std::max(worst, (pauli_exp(x, y, z) - unitary2(ref)).norm());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("pauli_exp is exactly unitary and respects collinear composition") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int k = 0; k < 100; ++k) {
    const pauli_vector a(dist(rng), dist(rng), dist(rng));
    const unitary2 u = pauli_exp<double>(a);
    CHECK((dagger(u) * u - unitary2::Identity()).norm() <= 1e-14);
    const double s = dist(rng), t = dist(rng);
    const unitary2 composed = pauli_exp<double>((s * a).eval()) * pauli_exp<double>((t * a).eval());
    CHECK((composed - pauli_exp<double>(((s + t) * a).eval())).norm() <= 1e-13);
  }
}

TEST_CASE("pauli_exp rejects non-finite input") {
  CHECK_THROWS_AS(pauli_exp(std::numeric_limits<double>::quiet_NaN(), 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(pauli_exp(0, std::numeric_limits<double>::infinity(), 0), std::invalid_argument);
}

TEST_CASE("distance and fidelity metrics") {
  const unitary2 u = pauli_exp(0.3, -0.2, 0.9);
  CHECK(frobenius_distance(u, u) == 0.0);
  CHECK(trace_fidelity(u, u) == doctest::Approx(1.0).epsilon(1e-14));
  const std::complex<double> phase = std::polar(1.0, 0.77);
  CHECK(trace_fidelity(u, (phase * u).eval()) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(frobenius_distance(u, (-u).eval()) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("canonicalize fixes determinant and global sign") {
  std::mt19937 rng(23);
  for (int k = 0; k < 50; ++k) {
    const unitary2 u = test_oracle::haar_su2(rng);
    const unitary2 c1 = canonicalize(u);
    const unitary2 c2 = canonicalize((-u).eval());
    CHECK((c1 - c2).norm() <= 1e-14);
    const std::complex<double> det = c1(0, 0) * c1(1, 1) - c1(0, 1) * c1(1, 0);
    CHECK(std::abs(det - 1.0) <= 1e-14);
    const std::complex<double> phase = std::polar(1.0, 1.1);
    CHECK((canonicalize((phase * u).eval()) - c1).norm() <= 1e-13);
  }
}

TEST_CASE("euler_xyx round-trips Haar samples") {
  std::mt19937 rng(4242);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    const unitary2 u = test_oracle::haar_su2(rng);
    const euler_xyx_angles e = euler_xyx(u);
    CHECK(e.alpha >= 0.0);
    CHECK(e.alpha < 2 * pi);
    CHECK(e.gamma >= 0.0);
    CHECK(e.gamma < 2 * pi);
    CHECK(e.beta >= 0.0);
    CHECK(e.beta <= pi / 2);
    worst = std::max(worst, (euler_recompose(e) - canonicalize(u)).norm());
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("euler_xyx handles axis-aligned and identity cases") {
  const euler_xyx_angles id = euler_xyx(unitary2::Identity().eval());
  CHECK(id.alpha == 0.0);
  CHECK(id.beta == 0.0);
  CHECK(id.gamma == 0.0);

  const euler_xyx_angles ex = euler_xyx(pauli_exp(0.3, 0, 0));  // pure x: beta = gamma = 0
  CHECK(ex.beta == 0.0);
  CHECK(ex.gamma == 0.0);
  CHECK(ex.alpha == doctest::Approx(0.3).epsilon(1e-14));

  const euler_xyx_angles ey = euler_xyx(pauli_exp(0, pi / 2, 0));  // pure y quarter turn
  CHECK(ey.beta == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK((euler_recompose(ey) - pauli_exp(0, pi / 2, 0)).norm() <= 1e-14);

  const unitary2 uz = pauli_exp(0, 0, 1.1);  // needs all three angles
  CHECK((euler_recompose(euler_xyx(uz)) - canonicalize(uz)).norm() <= 1e-13);
}

}  // TEST_SUITE
