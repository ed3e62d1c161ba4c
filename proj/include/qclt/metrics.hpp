#pragma once

#include <vector>

#include "qclt/charfun.hpp"
#include "qclt/fock.hpp"
#include "qclt/grid.hpp"

namespace qclt {

// Smallest grid from the ladder {base R, base R + 2, ...} on which every chi
// decays below 1e-8 at the boundary; the spacing of `base` is preserved.
// Throws an extent error when no extent up to max_extent works.
PhaseGrid choose_extent(const std::vector<CharFunction>& chis,
                        const PhaseGrid& base, double max_extent = 24.0);

// Hilbert-Schmidt distance via the quantum Plancherel identity, midpoint rule.
double hs_distance_plancherel(const CharFunction& chi1,
                              const CharFunction& chi2, const PhaseGrid& grid,
                              int threads = 0);

// Density matrix from the quadrature pairing <i|rho|j> =
// (1/pi) \int conj(chi_{|i><j|}) chi, Hermitized; rescaled to unit trace when
// the raw trace overshoots one.
FockDensityMatrix reconstruct_density(const CharFunction& chi, int dim,
                                      const PhaseGrid& grid, int threads = 0);

double trace_distance(const FockDensityMatrix& rho,
                      const FockDensityMatrix& sigma);

struct RateFit {
  std::vector<std::pair<int, double>> points;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

// Ordinary least squares on (log n, log distance).
RateFit rate_fit(const std::vector<std::pair<int, double>>& points);

}  // namespace qclt
