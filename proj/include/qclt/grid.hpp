#pragma once

#include <stdexcept>

namespace qclt {

// Square midpoint-rule quadrature grid on [-R, R]^2. Nodes sit at cell
// centres, so the origin is never a node.
struct PhaseGrid {
  double half_extent;
  int points_per_axis;

  PhaseGrid(double R, int K) : half_extent(R), points_per_axis(K) {
    if (!(R > 0)) throw std::invalid_argument("PhaseGrid: extent must be > 0");
    if (K < 16 || K % 2 != 0)
      throw std::invalid_argument("PhaseGrid: K must be even and >= 16");
  }

  double spacing() const { return 2.0 * half_extent / points_per_axis; }
  double node(int i) const { return -half_extent + (i + 0.5) * spacing(); }
};

}  // namespace qclt
