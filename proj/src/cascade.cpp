#include "qclt/cascade.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qclt/metrics.hpp"

namespace qclt {

double g_fn(double x) {
  if (x < 0) throw std::invalid_argument("g_fn: x < 0");
  if (x == 0) return 0.0;
  return (x + 1.0) * std::log1p(x) - x * std::log(x);
}

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0)
    throw std::invalid_argument("binary_entropy: x outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

CharFunction thermal_attenuator_apply(const CharFunction& chi_in,
                                      double lambda, double N) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("thermal_attenuator_apply: bad lambda");
  if (N < 0) throw std::invalid_argument("thermal_attenuator_apply: N < 0");
  const double sl = std::sqrt(lambda);
  const double c = 0.5 * (1.0 - lambda) * (2.0 * N + 1.0);
  auto eval = [chi_in, sl, c](Complex z) -> Complex {
    return chi_in(sl * z) * std::exp(-c * std::norm(z));
  };
  return CharFunction(CharFunction::Kind::ScaledProduct, "thermal_attenuator",
                      eval);
}

CharFunction cascade_apply(const CharFunction& chi_in,
                           const CascadeSpec& spec) {
  const CharFunction env_eff =
      cascade_environment_charfun(spec.env, spec.lambda, spec.segments);
  const double sl = std::sqrt(spec.lambda);
  const double sm = std::sqrt(1.0 - spec.lambda);
  auto eval = [chi_in, env_eff, sl, sm](Complex z) -> Complex {
    return chi_in(sl * z) * env_eff(sm * z);
  };
  return CharFunction(CharFunction::Kind::ScaledProduct, "cascade", eval);
}

double diamond_distance_bound(const FockDensityMatrix& env1,
                              const FockDensityMatrix& env2) {
  return trace_distance(env1, env2);
}

double classical_capacity_thermal(double lambda, double N, double E) {
  return g_fn(lambda * E + (1.0 - lambda) * N) - g_fn((1.0 - lambda) * N);
}

namespace {

// Coherent-information objective of the thermal attenuator at input photon
// budget E/x; g arguments are clamped at zero against roundoff.
double q_lower_objective(double x, double lambda, double N, double E) {
  const double y = E / x;
  const double c1 = (1.0 - lambda) * N + 1.0;
  const double d2 = ((1.0 + lambda) * y + c1) * ((1.0 + lambda) * y + c1) -
                    4.0 * lambda * y * (y + 1.0);
  const double d = std::sqrt(std::max(0.0, d2));
  const double tail = (1.0 - lambda) * (y - N);
  const double a1 = std::max(0.0, 0.5 * (d + tail - 1.0));
  const double a2 = std::max(0.0, 0.5 * (d - tail - 1.0));
  return x * (g_fn(lambda * y + (1.0 - lambda) * N) - g_fn(a1) - g_fn(a2));
}

}  // namespace

QuantumBand quantum_capacity_band(double lambda, double N, double E,
                                  int scan_points) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("quantum_capacity_band: bad lambda");
  if (N < 0 || E <= 0)
    throw std::invalid_argument("quantum_capacity_band: bad N or E");
  if (scan_points < 64)
    throw std::invalid_argument("quantum_capacity_band: scan_points < 64");

  QuantumBand band;
  const double threshold = (N + 0.5) / (N + 1.0);
  if (lambda < threshold) return band;  // antidegradable: Q = 0 exactly

  if (lambda > threshold) {
    // Log-uniform scan over x, then golden-section polish around the best cell.
    const double x_min = 1e-4;
    double best_v = -std::numeric_limits<double>::infinity();
    int best_i = scan_points - 1;
    for (int i = 0; i < scan_points; ++i) {
      const double x =
          x_min * std::pow(1.0 / x_min, double(i) / (scan_points - 1));
      const double v = q_lower_objective(x, lambda, N, E);
      if (v > best_v) {
        best_v = v;
        best_i = i;
      }
    }
    auto grid_x = [&](int i) {
      i = std::clamp(i, 0, scan_points - 1);
      return x_min * std::pow(1.0 / x_min, double(i) / (scan_points - 1));
    };
    double lo = grid_x(best_i - 1), hi = grid_x(best_i + 1);
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - inv_phi * (hi - lo), b = lo + inv_phi * (hi - lo);
    double fa = q_lower_objective(a, lambda, N, E);
    double fb = q_lower_objective(b, lambda, N, E);
    for (int it = 0; it < 80; ++it) {
      if (fa > fb) {
        hi = b;
        b = a;
        fb = fa;
        a = hi - inv_phi * (hi - lo);
        fa = q_lower_objective(a, lambda, N, E);
      } else {
        lo = a;
        a = b;
        fa = fb;
        b = lo + inv_phi * (hi - lo);
        fb = q_lower_objective(b, lambda, N, E);
      }
    }
    band.lower = std::max({0.0, best_v, fa, fb});
  }

  const double etilde = lambda * E + (1.0 - lambda) * N;
  double upper = -std::numeric_limits<double>::infinity();
  const double den = lambda - (1.0 - lambda) * N;
  if (den > 0) {
    const double f1 =
        g_fn(etilde) - g_fn((1.0 - lambda) * (N + 1.0) / den * etilde);
    upper = std::max(upper, f1);
  } else {
    band.f1_skipped = true;
  }
  const double pref = (1.0 - lambda) * std::pow(lambda, N);
  if (pref > 0) {
    const double f2 = -std::log(pref) - g_fn(N);
    upper = std::max(upper, f2);
  } else {
    band.f2_skipped = true;  // lossless endpoint, F2 diverges
  }
  band.upper = std::max(band.lower, std::isfinite(upper) ? upper : band.lower);
  return band;
}

CapacityDeltas capacity_error_terms(double eps, double lambda, double N,
                                    double E) {
  if (eps < 0 || eps > 2.0)
    throw std::invalid_argument("capacity_error_terms: eps outside [0,2]");
  CapacityDeltas d;
  if (eps == 0.0) return d;
  const double etilde = lambda * E + (1.0 - lambda) * N;
  const double rt = std::sqrt(eps);
  d.delta_q = 56.0 * rt * g_fn(4.0 * etilde / rt) + 6.0 * g_fn(4.0 * rt);
  d.delta_c = 7.0 * eps *
                  (std::log1p(etilde) - std::log(0.5 * eps) + 1.0) +
              2.0 * g_fn(2.5 * eps) + 4.0 * binary_entropy(0.5 * eps);
  return d;
}

}  // namespace qclt
