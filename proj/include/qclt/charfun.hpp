#pragma once

#include <functional>
#include <memory>
#include <string>

#include "qclt/fock.hpp"
#include "qclt/grid.hpp"

namespace qclt {

// Evaluable characteristic function chi(z) on the complex plane, single mode.
class CharFunction {
 public:
  enum class Kind { FockExpansion, Gaussian, Analytic, ScaledProduct };
  using Eval = std::function<Complex(Complex)>;

  CharFunction() : kind_(Kind::Analytic), id_("zero"), eval_([](Complex) {
                     return Complex(0, 0);
                   }) {}
  CharFunction(Kind kind, std::string id, Eval eval)
      : kind_(kind), id_(std::move(id)), eval_(std::move(eval)) {}

  Complex operator()(Complex z) const { return eval_(z); }
  Kind kind() const { return kind_; }
  const std::string& id() const { return id_; }

 private:
  Kind kind_;
  std::string id_;
  Eval eval_;
};

namespace detail {

// chi_{|i><j|}(z) = <j|D(z)|i> for all i,j < dim with |i-j| <= band, computed
// by the scaled Laguerre recurrence (every entry is bounded by one).
void displacement_table(Complex z, int dim, int band, Matrix& out);

}  // namespace detail

// Single matrix-element characteristic function via the explicit associated
// Laguerre polynomial formula.
CharFunction charfun_fock_element(int i, int j);

CharFunction charfun_of_density(const FockDensityMatrix& rho);

CharFunction charfun_gaussian(const GaussianSpec& spec);

CharFunction convolve_char(const CharFunction& chi1, const CharFunction& chi2,
                           double lambda);

// chi(z/sqrt(n))^n.
CharFunction self_convolution_power(const CharFunction& chi, int n);

// Effective environment state of an n-segment cascade of overall
// transmissivity lambda, as a product of rescaled copies of chi_env.
CharFunction cascade_environment_charfun(const CharFunction& chi_env,
                                         double lambda, int n);

CharFunction displaced_charfun(const CharFunction& chi, Complex w);

CharFunction cauchy_counterexample_charfun();

// sqrt(2)|t| K1(sqrt(2)|t|): the heavy-tailed wave-function state evaluated
// on the imaginary axis, chi(i t).
Complex heavy_tail_charfun_imaginary(double t);

// Mixed Wirtinger derivatives d_z^a d_{z*}^b chi at z0 for a+b <= max_order,
// central finite differences with one Richardson level.
struct DerivativeTable {
  int max_order = 0;
  Complex d[5][5] = {};  // d[a][b] valid for a+b <= max_order

  double max_abs(int order_min, int order_max) const;
};

DerivativeTable derivatives_at(const CharFunction& chi, Complex z0,
                               int max_order, double step = 1e-2);

inline DerivativeTable derivatives_at_zero(const CharFunction& chi,
                                           int max_order, double step = 1e-2) {
  return derivatives_at(chi, Complex(0, 0), max_order, step);
}

// Sampled lower bound on the C^k sup norm of chi over the ball |z| <= eps.
double phase_space_moment_estimate(const CharFunction& chi, int k, double eps,
                                   int samples);

// Largest |chi| over the outermost ring of grid nodes.
double boundary_ring_max(const CharFunction& chi, const PhaseGrid& grid);

struct WignerGrid {
  PhaseGrid grid;
  Eigen::MatrixXd values;  // values(i, j) = W(node_i + i*node_j)
  double max_imag = 0.0;   // largest |Im| seen before taking the real part
};

WignerGrid wigner_from_charfun(const CharFunction& chi, const PhaseGrid& grid,
                               int threads = 0);

// Energy-decay bound on |chi(z)|; vacuous (=1) at delta in {0,1}.
double decay_bound_value(double E, int m, double delta, double z_abs);

// Minimum of (bound - |chi|) over the radius/angle/delta scan; nonnegative
// margins certify the bound for this state.
double verify_decay_bound(const CharFunction& chi, double E,
                          const std::vector<double>& radii,
                          const std::vector<double>& deltas,
                          int angles = 16);

}  // namespace qclt
