#pragma once

#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qclt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Truncated single-mode density matrix in the number basis |0>..|D-1>.
// trunc_tol is the probability mass allowed to be lost to the truncation.
struct FockDensityMatrix {
  Matrix entries;
  double trunc_tol = 0.0;

  int dim() const { return static_cast<int>(entries.rows()); }
};

// Centred Gaussian state data: 2x2 covariance form of the characteristic
// function exponent in (Re z, Im z) coordinates, the symplectic eigenvalue
// nu = sqrt(det gamma), and the thermal photon number when gamma = nu*I.
struct GaussianSpec {
  Eigen::Matrix2d gamma;
  double nu = 1.0;
  std::optional<double> thermal_N;
};

GaussianSpec make_gaussian_spec(const Eigen::Matrix2d& gamma);

// Mean photon number of the Gaussian state described by `spec`.
double gaussian_mean_photon(const GaussianSpec& spec);

struct MomentReport {
  std::map<double, double> standard;  // order k -> M_k
  Complex mean;                       // <a>
  double nbar = 0.0;                  // <a†a>
  Complex asq;                        // <a²>
};

struct StandardMoment {
  double value = 0.0;
  bool tail_flagged = false;  // set when the truncation tail could matter
};

// Throws if the Hermiticity / trace / positivity invariants are violated.
void validate_state(const FockDensityMatrix& rho);

FockDensityMatrix number_state(int n, int dim);

FockDensityMatrix superposition_state(
    const std::vector<std::pair<int, Complex>>& coeffs, int dim);

FockDensityMatrix thermal_state(double N, int dim);

// Zero-pads a state to a larger truncation; the convolution of two states
// embedded into the sum of their supports is exact.
FockDensityMatrix embed_state(const FockDensityMatrix& rho, int dim);

// Beam-splitter convolution at transmissivity lambda, exact within the
// total-photon-number cutoff: blocks of total photon number >= dim are
// discarded and their mass is tracked in trunc_tol.
FockDensityMatrix convolve_fock(const FockDensityMatrix& rho,
                                const FockDensityMatrix& sigma, double lambda);

MomentReport mean_and_second_moments(const FockDensityMatrix& rho);

// Same report with M_k filled in for the requested orders.
MomentReport mean_and_second_moments(const FockDensityMatrix& rho,
                                     const std::vector<double>& orders);

StandardMoment standard_moment(const FockDensityMatrix& rho, double k);

// Gaussian state with the same first and second moments; requires a centred
// input (|<a>| <= 1e-9).
GaussianSpec gaussification(const FockDensityMatrix& rho);

double von_neumann_entropy(const FockDensityMatrix& rho);

// g(N) - S(rho_n), valid when gauss is thermal and rho_n has the same first
// and second moments.
double relative_entropy_vs_gaussification(const FockDensityMatrix& rho_n,
                                          const GaussianSpec& gauss);

}  // namespace qclt
