#include "qclt/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qclt/parallel.hpp"

namespace qclt {

namespace {

constexpr double kBoundaryTol = 1e-8;

int even_ceil(double v) {
  int k = static_cast<int>(std::ceil(v));
  if (k % 2) ++k;
  return std::max(k, 16);
}

std::string extent_message(const char* op, double suggested) {
  std::string msg(op);
  msg += ": characteristic function does not decay at the grid boundary";
  if (suggested > 0)
    msg += "; suggested extent R >= " + std::to_string(suggested);
  return msg;
}

void require_boundary_decay(const char* op,
                            const std::vector<CharFunction>& chis,
                            const PhaseGrid& grid) {
  for (const auto& chi : chis) {
    if (boundary_ring_max(chi, grid) < kBoundaryTol) continue;
    // Find a workable extent to report before giving up.
    double suggested = -1.0;
    const double h = grid.spacing();
    for (double R = grid.half_extent + 2.0; R <= 24.0; R += 2.0) {
      PhaseGrid probe(R, even_ceil(2.0 * R / h));
      if (boundary_ring_max(chi, probe) < kBoundaryTol) {
        suggested = R;
        break;
      }
    }
    throw std::runtime_error(extent_message(op, suggested));
  }
}

}  // namespace

PhaseGrid choose_extent(const std::vector<CharFunction>& chis,
                        const PhaseGrid& base, double max_extent) {
  const double h = base.spacing();
  for (double R = base.half_extent; R <= max_extent + 1e-9; R += 2.0) {
    PhaseGrid grid(R, even_ceil(2.0 * R / h));
    bool ok = true;
    for (const auto& chi : chis)
      if (boundary_ring_max(chi, grid) >= kBoundaryTol) {
        ok = false;
        break;
      }
    if (ok) return grid;
  }
  throw std::runtime_error(extent_message("choose_extent", -1.0));
}

double hs_distance_plancherel(const CharFunction& chi1,
                              const CharFunction& chi2, const PhaseGrid& grid,
                              int threads) {
  require_boundary_decay("hs_distance_plancherel", {chi1, chi2}, grid);
  const int K = grid.points_per_axis;
  std::vector<double> row_sum(K, 0.0);
  parallel_index(K, threads, [&](int i) {
    const double re = grid.node(i);
    double acc = 0.0;
    for (int j = 0; j < K; ++j) {
      const Complex z(re, grid.node(j));
      acc += std::norm(chi1(z) - chi2(z));
    }
    row_sum[i] = acc;
  });
  double total = 0.0;
  for (const double s : row_sum) total += s;  // fixed order for determinism
  const double h = grid.spacing();
  return std::sqrt(total * h * h / std::numbers::pi);
}

FockDensityMatrix reconstruct_density(const CharFunction& chi, int dim,
                                      const PhaseGrid& grid, int threads) {
  if (dim < 1 || dim > 64)
    throw std::invalid_argument("reconstruct_density: dim must be in [1,64]");
  require_boundary_decay("reconstruct_density", {chi}, grid);

  const int K = grid.points_per_axis;
  const double h = grid.spacing();
  const double scale = h * h / std::numbers::pi;

  std::vector<Matrix> row_acc(K);
  parallel_index(K, threads, [&](int i) {
    Matrix acc = Matrix::Zero(dim, dim);
    Matrix table;
    const double re = grid.node(i);
    for (int j = 0; j < K; ++j) {
      const Complex z(re, grid.node(j));
      const Complex w = chi(z) * scale;
      if (w == Complex(0, 0)) continue;
      detail::displacement_table(z, dim, dim - 1, table);
      acc.noalias() += w * table.conjugate();
    }
    row_acc[i] = std::move(acc);
  });

  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& acc : row_acc) m += acc;
  m = 0.5 * (m + m.adjoint()).eval();

  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > 0.05)
    throw std::runtime_error(
        "reconstruct_density: trace deviates from one; increase the grid "
        "resolution or the truncation dimension");

  FockDensityMatrix rho;
  if (tr > 1.0) m /= tr;
  rho.entries = std::move(m);
  rho.trunc_tol = std::abs(1.0 - tr);
  return rho;
}

double trace_distance(const FockDensityMatrix& rho,
                      const FockDensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  Matrix diff = rho.entries - sigma.entries;
  diff = 0.5 * (diff + diff.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

RateFit rate_fit(const std::vector<std::pair<int, double>>& points) {
  if (points.size() < 4)
    throw std::invalid_argument("rate_fit: need at least 4 points");
  for (const auto& [n, d] : points)
    if (!(d > 0))
      throw std::invalid_argument("rate_fit: nonpositive distance");

  const int n = static_cast<int>(points.size());
  double sx = 0, sy = 0;
  for (const auto& [k, d] : points) {
    sx += std::log(double(k));
    sy += std::log(d);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [k, d] : points) {
    const double dx = std::log(double(k)) - mx;
    const double dy = std::log(d) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  RateFit fit;
  fit.points = points;
  fit.slope = sxx > 0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& [k, d] : points) {
    const double pred = fit.intercept + fit.slope * std::log(double(k));
    ss_res += (std::log(d) - pred) * (std::log(d) - pred);
  }
  fit.r_squared = syy > 1e-30 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace qclt
