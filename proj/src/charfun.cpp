#include "qclt/charfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qclt/bessel.hpp"
#include "qclt/parallel.hpp"

namespace qclt {

namespace {

Complex ipow(Complex base, int n) {
  Complex r(1, 0);
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

// Derivative convention L_n^k(x) = d^k/dx^k L_n(x), explicit coefficient sum.
double laguerre_deriv(int n, int k, double x) {
  double sum = 0.0;
  double sign = 1.0;
  for (int l = 0; l + k <= n; ++l) {
    const double logc = log_factorial(n) - log_factorial(l + k) -
                        log_factorial(n - k - l) - log_factorial(l);
    sum += sign * std::exp(logc) * std::pow(x, l);
    sign = -sign;
  }
  return (k % 2 ? -1.0 : 1.0) * sum;
}

}  // namespace

namespace detail {

void displacement_table(Complex z, int dim, int band, Matrix& out) {
  out.setZero(dim, dim);
  const double x = std::norm(z);
  const double e = std::exp(-0.5 * x);
  band = std::min(band, dim - 1);

  Complex ck(e, 0);   // z^k e^{-x/2} / sqrt(k!)
  Complex dk(e, 0);   // (-z*)^k e^{-x/2} / sqrt(k!)
  for (int k = 0; k <= band; ++k) {
    if (k > 0) {
      const double s = 1.0 / std::sqrt(double(k));
      ck *= z * s;
      dk *= -std::conj(z) * s;
    }
    Complex pm1(0, 0), pm = ck;   // chi_{|m><m+k|}
    Complex qm1(0, 0), qm = dk;   // chi_{|m+k><m|}
    out(0, k) = pm;
    if (k > 0) out(k, 0) = qm;
    for (int m = 0; m + 1 + k < dim; ++m) {
      const double den = std::sqrt(double(m + 1) * double(m + k + 1));
      const double a = (2.0 * m + k + 1.0 - x) / den;
      const double b = std::sqrt(double(m) * double(m + k)) / den;
      const Complex pn = a * pm - b * pm1;
      const Complex qn = a * qm - b * qm1;
      pm1 = pm; pm = pn;
      qm1 = qm; qm = qn;
      out(m + 1, m + 1 + k) = pm;
      if (k > 0) out(m + 1 + k, m + 1) = qm;
    }
  }
}

}  // namespace detail

CharFunction charfun_fock_element(int i, int j) {
  if (i < 0 || j < 0)
    throw std::invalid_argument("charfun_fock_element: negative index");
  auto eval = [i, j](Complex z) -> Complex {
    const double x = std::norm(z);
    const double env = std::exp(-0.5 * x);
    if (i <= j) {
      const double pref = std::exp(0.5 * (log_factorial(i) - log_factorial(j)));
      return pref * ipow(-z, j - i) * env * laguerre_deriv(j, j - i, x);
    }
    const double pref = std::exp(0.5 * (log_factorial(j) - log_factorial(i)));
    return pref * ipow(std::conj(z), i - j) * env * laguerre_deriv(i, i - j, x);
  };
  return CharFunction(CharFunction::Kind::FockExpansion, "fock_element", eval);
}

CharFunction charfun_of_density(const FockDensityMatrix& rho) {
  struct Payload {
    std::vector<std::tuple<int, int, Complex>> weights;
    int active = 1;
    int band = 0;
  };
  auto p = std::make_shared<Payload>();
  const int d = rho.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Complex w = rho.entries(i, j);
      if (w != Complex(0, 0)) {
        p->weights.emplace_back(i, j, w);
        p->active = std::max(p->active, std::max(i, j) + 1);
        p->band = std::max(p->band, std::abs(i - j));
      }
    }
  auto eval = [p](Complex z) -> Complex {
    thread_local Matrix table;
    detail::displacement_table(z, p->active, p->band, table);
    Complex sum(0, 0);
    for (const auto& [i, j, w] : p->weights) sum += w * table(i, j);
    return sum;
  };
  return CharFunction(CharFunction::Kind::FockExpansion, "fock_expansion",
                      eval);
}

CharFunction charfun_gaussian(const GaussianSpec& spec) {
  const Eigen::Matrix2d gamma = spec.gamma;
  auto eval = [gamma](Complex z) -> Complex {
    const Eigen::Vector2d v(z.real(), z.imag());
    return Complex(std::exp(-0.5 * v.dot(gamma * v)), 0.0);
  };
  return CharFunction(CharFunction::Kind::Gaussian, "gaussian", eval);
}

CharFunction convolve_char(const CharFunction& chi1, const CharFunction& chi2,
                           double lambda) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("convolve_char: lambda outside [0,1]");
  const double s1 = std::sqrt(lambda);
  const double s2 = std::sqrt(1.0 - lambda);
  auto eval = [chi1, chi2, s1, s2](Complex z) -> Complex {
    return chi1(s1 * z) * chi2(s2 * z);
  };
  return CharFunction(CharFunction::Kind::ScaledProduct, "convolution", eval);
}

CharFunction self_convolution_power(const CharFunction& chi, int n) {
  if (n < 1) throw std::invalid_argument("self_convolution_power: n < 1");
  const double rt = 1.0 / std::sqrt(double(n));
  auto eval = [chi, rt, n](Complex z) -> Complex {
    const Complex w = chi(rt * z);
    // Powers through exp(n log w) lose accuracy near zeros of chi; fall back
    // to branch-free repeated multiplication there.
    if (std::abs(w) > 0.1) return std::pow(w, double(n));
    return ipow(w, n);
  };
  return CharFunction(CharFunction::Kind::ScaledProduct,
                      "self_convolution_power", eval);
}

CharFunction cascade_environment_charfun(const CharFunction& chi_env,
                                         double lambda, int n) {
  if (n < 1)
    throw std::invalid_argument("cascade_environment_charfun: n < 1");
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument(
        "cascade_environment_charfun: lambda must be inside (0,1)");
  const double pref = std::sqrt((1.0 - std::pow(lambda, 1.0 / n)) /
                                (1.0 - lambda));
  std::vector<double> scales(n);
  for (int l = 1; l <= n; ++l)
    scales[l - 1] = pref * std::pow(lambda, (l - 1) / (2.0 * n));
  auto eval = [chi_env, scales](Complex z) -> Complex {
    Complex prod(1, 0);
    for (const double s : scales) prod *= chi_env(s * z);
    return prod;
  };
  return CharFunction(CharFunction::Kind::ScaledProduct, "cascade_environment",
                      eval);
}

CharFunction displaced_charfun(const CharFunction& chi, Complex w) {
  auto eval = [chi, w](Complex u) -> Complex {
    return std::exp(std::conj(w) * u - w * std::conj(u)) * chi(u);
  };
  return CharFunction(chi.kind(), "displaced", eval);
}

CharFunction cauchy_counterexample_charfun() {
  auto eval = [](Complex z) -> Complex {
    const double sr2 = std::numbers::sqrt2;
    const Complex den(sr2, z.real());
    return sr2 * std::exp(-std::abs(z.imag()) * den) / den;
  };
  return CharFunction(CharFunction::Kind::Analytic, "cauchy", eval);
}

Complex heavy_tail_charfun_imaginary(double t) {
  const double x = std::numbers::sqrt2 * std::abs(t);
  if (x == 0.0) return Complex(1, 0);
  return Complex(x * bessel_k1(x), 0.0);
}

namespace {

// O(h^2) central-difference rows over offsets -2..2 for orders 0..4.
constexpr double kStencil[5][5] = {
    {0, 0, 1, 0, 0},
    {0, -0.5, 0, 0.5, 0},
    {0, 1, -2, 1, 0},
    {-0.5, 1, 0, -1, 0.5},
    {1, -4, 6, -4, 1},
};

void cartesian_partials(const CharFunction& chi, Complex z0, int max_order,
                        double h, Complex out[5][5]) {
  Complex f[5][5];
  for (int p = -2; p <= 2; ++p)
    for (int q = -2; q <= 2; ++q)
      f[p + 2][q + 2] = chi(z0 + Complex(p * h, q * h));
  for (int a = 0; a <= max_order; ++a)
    for (int b = 0; a + b <= max_order; ++b) {
      Complex acc(0, 0);
      for (int p = 0; p < 5; ++p) {
        if (kStencil[a][p] == 0.0) continue;
        Complex row(0, 0);
        for (int q = 0; q < 5; ++q)
          if (kStencil[b][q] != 0.0) row += kStencil[b][q] * f[p][q];
        acc += kStencil[a][p] * row;
      }
      out[a][b] = acc / std::pow(h, a + b);
    }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double DerivativeTable::max_abs(int order_min, int order_max) const {
  double m = 0.0;
  for (int a = 0; a <= order_max; ++a)
    for (int b = 0; a + b <= order_max; ++b)
      if (a + b >= order_min) m = std::max(m, std::abs(d[a][b]));
  return m;
}

DerivativeTable derivatives_at(const CharFunction& chi, Complex z0,
                               int max_order, double step) {
  if (max_order < 0 || max_order > 4)
    throw std::invalid_argument("derivatives_at: order must be in [0,4]");
  Complex coarse[5][5], fine[5][5];
  cartesian_partials(chi, z0, max_order, step, coarse);
  cartesian_partials(chi, z0, max_order, step / 2, fine);

  Complex cart[5][5];
  for (int a = 0; a <= max_order; ++a)
    for (int b = 0; a + b <= max_order; ++b) {
      cart[a][b] = (4.0 * fine[a][b] - coarse[a][b]) / 3.0;
      if (!std::isfinite(cart[a][b].real()) ||
          !std::isfinite(cart[a][b].imag()))
        throw std::runtime_error("derivatives_at: non-finite evaluation");
    }

  DerivativeTable t;
  t.max_order = max_order;
  const Complex iu(0, 1);
  for (int alpha = 0; alpha <= max_order; ++alpha)
    for (int beta = 0; alpha + beta <= max_order; ++beta) {
      Complex acc(0, 0);
      for (int p = 0; p <= alpha; ++p)
        for (int q = 0; q <= beta; ++q)
          acc += binomial(alpha, p) * binomial(beta, q) *
                 ipow(-iu, alpha - p) * ipow(iu, beta - q) *
                 cart[p + q][alpha - p + beta - q];
      t.d[alpha][beta] = acc / std::pow(2.0, alpha + beta);
    }
  return t;
}

double phase_space_moment_estimate(const CharFunction& chi, int k, double eps,
                                   int samples) {
  if (eps <= 0) throw std::invalid_argument("phase_space_moment_estimate");
  samples = std::max(samples, 1);
  constexpr double kGoldenAngle = 2.39996322972865332;
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double r =
        samples > 1 ? eps * std::sqrt(double(i) / (samples - 1)) : 0.0;
    const Complex z0 = std::polar(r, i * kGoldenAngle);
    const DerivativeTable t = derivatives_at(chi, z0, k);
    best = std::max(best, t.max_abs(0, k));
  }
  return best;
}

double boundary_ring_max(const CharFunction& chi, const PhaseGrid& grid) {
  const int K = grid.points_per_axis;
  double m = 0.0;
  for (int i = 0; i < K; ++i) {
    const double c = grid.node(i);
    const double edge = grid.node(K - 1);
    const double lo = grid.node(0);
    m = std::max(m, std::abs(chi(Complex(c, lo))));
    m = std::max(m, std::abs(chi(Complex(c, edge))));
    m = std::max(m, std::abs(chi(Complex(lo, c))));
    m = std::max(m, std::abs(chi(Complex(edge, c))));
  }
  return m;
}

WignerGrid wigner_from_charfun(const CharFunction& chi, const PhaseGrid& grid,
                               int threads) {
  if (boundary_ring_max(chi, grid) >= 1e-8)
    throw std::runtime_error(
        "wigner_from_charfun: characteristic function has support outside the "
        "grid; enlarge the extent");

  const int K = grid.points_per_axis;
  const double h = grid.spacing();

  Matrix samples(K, K);
  parallel_index(K, threads, [&](int r) {
    const double wr = grid.node(r);
    for (int s = 0; s < K; ++s) samples(r, s) = chi(Complex(wr, grid.node(s)));
  });

  // W(z) = (1/pi^2) sum_w chi(w) exp(2i (z_I w_R - z_R w_I)) h^2, separable.
  Matrix e1(K, K), e2(K, K);
  for (int b = 0; b < K; ++b)
    for (int r = 0; r < K; ++r) {
      const double phase = 2.0 * grid.node(b) * grid.node(r);
      e1(b, r) = Complex(std::cos(phase), std::sin(phase));
      e2(r, b) = std::conj(e1(b, r));
    }
  const Matrix m = e1 * samples * e2;  // m(b, a) = sum at (z_R = a, z_I = b)

  WignerGrid w{grid, Eigen::MatrixXd(K, K), 0.0};
  const double scale = h * h / (std::numbers::pi * std::numbers::pi);
  for (int a = 0; a < K; ++a)
    for (int b = 0; b < K; ++b) {
      const Complex v = m(b, a) * scale;
      w.values(a, b) = v.real();
      w.max_imag = std::max(w.max_imag, std::abs(v.imag()));
    }
  return w;
}

double decay_bound_value(double E, int m, double delta, double z_abs) {
  if (m < 1) throw std::invalid_argument("decay_bound_value: m < 1");
  if (delta < 0.0 || delta > 1.0)
    throw std::invalid_argument("decay_bound_value: delta outside [0,1]");
  if (E < 0.5 * m)
    throw std::invalid_argument("decay_bound_value: E below vacuum energy");
  if (delta <= 0.0 || delta >= 1.0) return 1.0;

  double log_df = 0.0;  // log (2m+1)!!
  for (int j = 0; j <= m; ++j) log_df += std::log(2.0 * j + 1.0);
  const double log_coef = 3.0 * std::log1p(-delta) +
                          (2.0 * m - 1.0) * std::log(delta) + 2.0 * log_df -
                          std::log(6.0) - 4.0 * m * std::log(2.0) -
                          (2.0 * m - 1.0) * std::log(E);
  const double pisq = std::numbers::pi * std::numbers::pi;
  const double cut = std::min(z_abs * z_abs, pisq * delta / (4.0 * E));
  return 1.0 - std::exp(log_coef) * cut;
}

double verify_decay_bound(const CharFunction& chi, double E,
                          const std::vector<double>& radii,
                          const std::vector<double>& deltas, int angles) {
  double margin = std::numeric_limits<double>::infinity();
  for (const double r : radii) {
    double bound = 1.0;
    for (const double d : deltas)
      bound = std::min(bound, decay_bound_value(E, 1, d, r));
    for (int a = 0; a < angles; ++a) {
      const double theta = 2.0 * std::numbers::pi * a / angles;
      margin = std::min(margin, bound - std::abs(chi(std::polar(r, theta))));
    }
  }
  return margin;
}

}  // namespace qclt
