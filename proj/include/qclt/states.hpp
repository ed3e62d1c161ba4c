#pragma once

#include <optional>
#include <random>
#include <string>

#include "qclt/charfun.hpp"
#include "qclt/fock.hpp"

namespace qclt {

// Resolution of a named state id: "vacuum", "fock<k>", "plus03",
// "thermal:<N>", "superpos:<n=re[+/-i im]>,...", "squeezed:<eta>",
// "cauchy", "heavy_tail".
struct NamedState {
  std::string id;
  std::optional<FockDensityMatrix> matrix;  // Fock-representable states
  std::optional<GaussianSpec> gauss;        // squeezed:<eta>
  bool analytic_only = false;               // cauchy / heavy_tail
  CharFunction chi;
  double energy = 0.0;  // Tr[rho (a†a + 1/2)] when finite
};

NamedState resolve_state(const std::string& id, int dim);

// Full-rank random density matrix with a geometric energy envelope so the
// truncation tail is negligible at the given dimension.
FockDensityMatrix random_state(std::mt19937_64& rng, int dim,
                               double tail_ratio = 0.4);

// Rank-r random density matrix, same envelope.
FockDensityMatrix random_low_rank_state(std::mt19937_64& rng, int dim,
                                        int rank, double tail_ratio = 0.4);

// Parity-averaged random state: odd Fock diagonals vanish, so <a> = 0.
FockDensityMatrix random_centred_state(std::mt19937_64& rng, int dim,
                                       double tail_ratio = 0.4);

}  // namespace qclt
