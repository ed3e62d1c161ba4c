#include <doctest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "qclt/cascade.hpp"
#include "qclt/fock.hpp"
#include "qclt/states.hpp"

using namespace qclt;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Dense two-mode oracle: exponentiate the full generator on the product
// space and trace out the second mode, after projecting the input onto the
// retained total-photon-number blocks.
FockDensityMatrix convolve_dense_oracle(const FockDensityMatrix& rho,
                                        const FockDensityMatrix& sigma,
                                        double lambda, bool project) {
  const int d = rho.dim();
  const int dd = d * d;
  auto idx = [d](int i, int j) { return i * d + j; };
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dd, dd);
  for (int i = 0; i + 1 < d; ++i)
    for (int j = 1; j < d; ++j) {
      const double t = std::sqrt(double(i + 1) * double(j));
      gen(idx(i + 1, j - 1), idx(i, j)) += t;   // a†b
      gen(idx(i, j), idx(i + 1, j - 1)) -= t;   // -(ab†)ᵀ contribution
    }
  const Eigen::MatrixXd u = (std::acos(std::sqrt(lambda)) * gen).exp();

  Matrix big = Matrix::Zero(dd, dd);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          big(idx(i, j), idx(k, l)) = rho.entries(i, k) * sigma.entries(j, l);
  if (project) {
    for (int a = 0; a < dd; ++a)
      for (int b = 0; b < dd; ++b) {
        const bool keep = (a / d + a % d) < d && (b / d + b % d) < d;
        if (!keep) big(a, b) = 0.0;
      }
  }
  const Matrix evolved = u * big * u.transpose();
  FockDensityMatrix out;
  out.entries = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j)
        out.entries(i, k) += evolved(idx(i, j), idx(k, j));
  return out;
}

}  // namespace

TEST_CASE("number_state basics") {
  const auto vac = number_state(0, 4);
  CHECK(vac.entries(0, 0) == Complex(1, 0));
  CHECK(vac.entries.cwiseAbs().sum() == 1.0);
  CHECK(vac.trunc_tol == 0.0);

  const auto one = number_state(1, 8);
  CHECK(one.entries(1, 1) == Complex(1, 0));

  CHECK(mean_and_second_moments(number_state(3, 10)).nbar ==
        doctest::Approx(3.0));
  CHECK_THROWS(number_state(4, 4));
}

TEST_CASE("superposition_state") {
  const auto plus03 = superposition_state({{0, 1.0}, {3, 1.0}}, 8);
  CHECK(plus03.entries(0, 0).real() == doctest::Approx(0.5));
  CHECK(plus03.entries(0, 3).real() == doctest::Approx(0.5));
  CHECK(plus03.entries(3, 0).real() == doctest::Approx(0.5));
  CHECK(plus03.entries(3, 3).real() == doctest::Approx(0.5));

  const auto single = superposition_state({{1, 1.0}}, 4);
  CHECK(max_abs_diff(single.entries, number_state(1, 4).entries) == 0.0);

  const auto plus01 = superposition_state({{0, 1.0}, {1, 1.0}}, 4);
  CHECK(plus01.entries(0, 1).real() == doctest::Approx(0.5));
  CHECK(std::abs(mean_and_second_moments(plus01).mean - Complex(0.5, 0)) <
        1e-12);

  CHECK_THROWS(superposition_state({}, 4));
  CHECK_THROWS(superposition_state({{0, 0.0}}, 4));
}

TEST_CASE("thermal_state") {
  const auto vac = thermal_state(0.0, 4);
  CHECK(max_abs_diff(vac.entries, number_state(0, 4).entries) == 0.0);
  CHECK(vac.trunc_tol == 0.0);

  const auto t1 = thermal_state(1.0, 2);
  CHECK(t1.entries(0, 0).real() == doctest::Approx(0.5));
  CHECK(t1.entries(1, 1).real() == doctest::Approx(0.25));
  CHECK(t1.trunc_tol == doctest::Approx(0.25));

  CHECK(von_neumann_entropy(thermal_state(1.0, 64)) ==
        doctest::Approx(g_fn(1.0)).epsilon(1e-4));
  CHECK_THROWS(thermal_state(-0.5, 4));
}

TEST_CASE("convolve_fock identities") {
  const int d = 12;
  const auto vac = number_state(0, d);
  const auto one = number_state(1, d);

  for (const double lam : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto out = convolve_fock(vac, one, lam);
    Matrix expect = Matrix::Zero(d, d);
    expect(0, 0) = lam;
    expect(1, 1) = 1.0 - lam;
    CHECK(max_abs_diff(out.entries, expect) < 1e-12);
  }

  // Identity at lambda = 1, exact once the blocks are complete.
  std::mt19937_64 rng(7);
  const auto rho = embed_state(random_state(rng, d / 2), d);
  const auto sigma = embed_state(random_state(rng, d / 2), d);
  CHECK(max_abs_diff(convolve_fock(rho, sigma, 1.0).entries, rho.entries) <
        1e-12);

  // Fock state against the vacuum at the balanced splitter: binomial mixture.
  const int l = 4;
  const auto out = convolve_fock(number_state(l, d), vac, 0.5);
  for (int k = 0; k <= l; ++k) {
    const double binom = std::round(std::tgamma(l + 1.0) /
                                    (std::tgamma(k + 1.0) * std::tgamma(l - k + 1.0)));
    CHECK(out.entries(k, k).real() ==
          doctest::Approx(binom / std::pow(2.0, l)).epsilon(1e-12));
  }

  // Hong-Ou-Mandel: two single photons bunch.
  const auto hom = convolve_fock(one, one, 0.5);
  CHECK(hom.entries(0, 0).real() == doctest::Approx(0.5));
  CHECK(hom.entries(2, 2).real() == doctest::Approx(0.5));
  CHECK(std::abs(hom.entries(1, 1)) < 1e-12);

  CHECK_THROWS(convolve_fock(vac, number_state(0, d + 1), 0.5));
  CHECK_THROWS(convolve_fock(vac, one, 1.5));
}

TEST_CASE("convolve_fock against the dense two-mode oracle") {
  std::mt19937_64 rng(11);
  for (const int d : {5, 6}) {
    const auto rho = random_state(rng, d);
    const auto sigma = random_state(rng, d);
    for (const double lam : {0.2, 0.5, 0.8}) {
      const auto fast = convolve_fock(rho, sigma, lam);
      const auto slow = convolve_dense_oracle(rho, sigma, lam, true);
      CHECK(max_abs_diff(fast.entries, slow.entries) < 1e-9);
    }
    // Support below d/2 keeps every populated block complete: no projection.
    Matrix small = Matrix::Zero(d, d);
    small.topLeftCorner(2, 2) = rho.entries.topLeftCorner(2, 2);
    FockDensityMatrix rho_small{small / small.trace().real(), 0.0};
    const auto fast = convolve_fock(rho_small, rho_small, 0.3);
    const auto slow = convolve_dense_oracle(rho_small, rho_small, 0.3, false);
    CHECK(max_abs_diff(fast.entries, slow.entries) < 1e-9);
  }
}

TEST_CASE("convolution preserves the state invariants") {
  std::mt19937_64 rng(3);
  const auto rho = random_state(rng, 16);
  const auto sigma = random_state(rng, 16);
  for (const double lam : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto out = convolve_fock(rho, sigma, lam);
    CHECK_NOTHROW(validate_state(out));
    const auto swapped = convolve_fock(sigma, rho, 1.0 - lam);
    CHECK(max_abs_diff(out.entries, swapped.entries) < 1e-10);
  }
}

TEST_CASE("energy additivity for centred states") {
  // For states with nonzero <a> the beam splitter adds an interference term,
  // so the convex-combination rule is a centred-state identity.
  std::mt19937_64 rng(3);
  const auto rho = random_centred_state(rng, 24, 0.3);
  const auto sigma = random_centred_state(rng, 24, 0.3);
  const double e_rho = mean_and_second_moments(rho).nbar;
  const double e_sig = mean_and_second_moments(sigma).nbar;
  for (const double lam : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto out = convolve_fock(rho, sigma, lam);
    const double expect = lam * e_rho + (1 - lam) * e_sig;
    CHECK(std::abs(mean_and_second_moments(out).nbar - expect) < 1e-8);
  }
}

TEST_CASE("moments") {
  const auto one = number_state(1, 16);
  const auto m = mean_and_second_moments(one);
  CHECK(std::abs(m.mean) < 1e-15);
  CHECK(m.nbar == doctest::Approx(1.0));
  CHECK(std::abs(m.asq) < 1e-15);

  const auto plus03 = superposition_state({{0, 1.0}, {3, 1.0}}, 8);
  const auto m2 = mean_and_second_moments(plus03);
  CHECK(std::abs(m2.mean) < 1e-15);
  CHECK(m2.nbar == doctest::Approx(1.5));
  CHECK(std::abs(m2.asq) < 1e-15);

  CHECK(standard_moment(number_state(0, 4), 2.0).value ==
        doctest::Approx(1.0));
  CHECK(standard_moment(one, 2.0).value == doctest::Approx(2.0));
  const auto t1 = thermal_state(1.0, 64);
  CHECK(standard_moment(t1, 2.0).value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK_THROWS(standard_moment(one, -1.0));

  // M_k nondecreasing in k, and the truncation flag trips for a hot state
  // at a tiny cutoff.
  double prev = standard_moment(t1, 0.0).value;
  for (const double k : {1.0, 2.0, 3.0, 4.0}) {
    const double cur = standard_moment(t1, k).value;
    CHECK(cur >= prev - 1e-12);
    prev = cur;
  }
  CHECK(standard_moment(thermal_state(5.0, 8), 4.0).tail_flagged);
  CHECK_FALSE(standard_moment(t1, 2.0).tail_flagged);

  const auto report = mean_and_second_moments(t1, {0.0, 2.0});
  CHECK(report.standard.at(0.0) == doctest::Approx(1.0));
  CHECK(report.standard.at(2.0) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("moment monotonicity under vacuum convolution") {
  std::mt19937_64 rng(5);
  const auto rho = random_state(rng, 16);
  const auto damped = convolve_fock(rho, number_state(0, 16), 0.5);
  for (const double k : {1.0, 2.0, 3.0, 4.0})
    CHECK(standard_moment(damped, k).value <=
          standard_moment(rho, k).value + 1e-9);
}

TEST_CASE("gaussification") {
  const auto one = gaussification(number_state(1, 16));
  CHECK(max_abs_diff(Matrix(one.gamma.cast<Complex>()),
                     Matrix(3.0 * Eigen::Matrix2d::Identity().cast<Complex>())) <
        1e-12);
  CHECK(one.nu == doctest::Approx(3.0));
  CHECK(one.thermal_N.value() == doctest::Approx(1.0));

  const auto plus03 =
      gaussification(superposition_state({{0, 1.0}, {3, 1.0}}, 8));
  CHECK(plus03.gamma(0, 0) == doctest::Approx(4.0));
  CHECK(plus03.gamma(1, 1) == doctest::Approx(4.0));
  CHECK(plus03.thermal_N.value() == doctest::Approx(1.5));

  const auto vac = gaussification(number_state(0, 4));
  CHECK(vac.nu == doctest::Approx(1.0));
  CHECK(vac.thermal_N.value() == doctest::Approx(0.0));

  CHECK_THROWS(gaussification(superposition_state({{0, 1.0}, {1, 1.0}}, 4)));
  CHECK_THROWS(make_gaussian_spec(0.5 * Eigen::Matrix2d::Identity()));
}

TEST_CASE("gaussification mixes covariances convexly") {
  const auto a = superposition_state({{0, 1.0}, {2, Complex(0.3, 0.4)}}, 32);
  const auto b = thermal_state(0.7, 32);
  const auto mixed = convolve_fock(a, b, 0.25);
  const Eigen::Matrix2d expect =
      0.25 * gaussification(a).gamma + 0.75 * gaussification(b).gamma;
  CHECK((gaussification(mixed).gamma - expect).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("entropy") {
  CHECK(von_neumann_entropy(superposition_state({{0, 1.0}, {3, 1.0}}, 8)) ==
        doctest::Approx(0.0).epsilon(1e-9));
  FockDensityMatrix half;
  half.entries = Matrix::Zero(2, 2);
  half.entries(0, 0) = 0.5;
  half.entries(1, 1) = 0.5;
  CHECK(von_neumann_entropy(half) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("relative entropy against the Gaussification") {
  const auto tau = thermal_state(1.0, 64);
  const auto gs = gaussification(tau);
  CHECK(relative_entropy_vs_gaussification(tau, gs) ==
        doctest::Approx(0.0).epsilon(1e-4));

  const auto one = number_state(1, 64);
  CHECK(relative_entropy_vs_gaussification(one, gaussification(one)) ==
        doctest::Approx(2.0 * std::log(2.0)));

  // Monotone along the doubling sequence.
  FockDensityMatrix cur = one;
  double prev = relative_entropy_vs_gaussification(cur, gaussification(one));
  for (int step = 0; step < 3; ++step) {
    cur = convolve_fock(cur, cur, 0.5);
    const double d =
        relative_entropy_vs_gaussification(cur, gaussification(one));
    CHECK(d <= prev + 1e-6);
    prev = d;
  }

  CHECK_THROWS(relative_entropy_vs_gaussification(number_state(2, 64), gs));
}

TEST_CASE("validate_state rejects broken inputs") {
  FockDensityMatrix bad;
  bad.entries = Matrix::Zero(2, 2);
  bad.entries(0, 0) = 1.2;
  CHECK_THROWS(validate_state(bad));
  bad.entries(0, 0) = 0.5;
  bad.entries(0, 1) = Complex(0.2, 0.1);
  bad.entries(1, 0) = Complex(0.2, 0.3);
  bad.entries(1, 1) = 0.5;
  CHECK_THROWS(validate_state(bad));
}
