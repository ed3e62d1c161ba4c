#pragma once

#include "qclt/charfun.hpp"
#include "qclt/fock.hpp"

namespace qclt {

// Bosonic entropy function g(x) = (x+1)log(x+1) - x log x, natural log.
double g_fn(double x);

double binary_entropy(double x);

// Thermal attenuator: chi(z) -> chi(sqrt(lambda) z) * exp(-(1-lambda)(2N+1)|z|^2/2).
CharFunction thermal_attenuator_apply(const CharFunction& chi_in, double lambda,
                                      double N);

// Cascade of `segments` beam splitters of equal transmissivity lambda^(1/n),
// each fed with the environment state described by `env`.
struct CascadeSpec {
  double lambda = 0.5;
  int segments = 1;
  CharFunction env;
  double env_N = 0.0;  // environment mean photon number
};

CharFunction cascade_apply(const CharFunction& chi_in, const CascadeSpec& spec);

// Trace-distance upper bound on the diamond distance between the two
// attenuator channels with these environments; independent of lambda.
double diamond_distance_bound(const FockDensityMatrix& env1,
                              const FockDensityMatrix& env2);

double classical_capacity_thermal(double lambda, double N, double E);

struct QuantumBand {
  double lower = 0.0;
  double upper = 0.0;
  bool f1_skipped = false;  // F1 denominator not positive
  bool f2_skipped = false;  // F2 not finite (lossless endpoint)
};

// Best known lower/upper bounds on the energy-constrained quantum capacity of
// the thermal attenuator; zero below the antidegradability threshold.
QuantumBand quantum_capacity_band(double lambda, double N, double E,
                                  int scan_points = 256);

struct CapacityDeltas {
  double delta_c = 0.0;
  double delta_q = 0.0;
};

// Continuity-bound error terms for a channel eps-close in diamond norm to the
// thermal attenuator.
CapacityDeltas capacity_error_terms(double eps, double lambda, double N,
                                    double E);

struct CapacityReport {
  double lambda = 0.0;
  double N = 0.0;
  double E = 0.0;
  double classical = 0.0;
  double q_lower = 0.0;
  double q_upper = 0.0;
  bool f1_skipped = false;
  bool f2_skipped = false;
  double eps = 0.0;  // half the diamond-distance surrogate
  double delta_c = 0.0;
  double delta_q = 0.0;
};

}  // namespace qclt
