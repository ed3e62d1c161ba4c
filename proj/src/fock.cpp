#include "qclt/fock.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "qclt/cascade.hpp"

namespace qclt {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kPsdTol = 1e-9;
constexpr double kCentredTol = 1e-9;

Matrix hermitized(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// Generator block of a†b - ab† at total photon number N, basis |k, N-k>.
Eigen::MatrixXd generator_block(int N) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int k = 0; k < N; ++k) {
    const double t = std::sqrt(double(k + 1) * double(N - k));
    g(k + 1, k) = t;
    g(k, k + 1) = -t;
  }
  return g;
}

}  // namespace

void validate_state(const FockDensityMatrix& rho) {
  const Matrix& m = rho.entries;
  const int d = rho.dim();
  if (d < 1 || m.cols() != d) throw std::invalid_argument("state: bad shape");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument("state: not Hermitian");
  const Complex tr = m.trace();
  if (std::abs(tr.imag()) > kHermTol)
    throw std::invalid_argument("state: complex trace");
  if (tr.real() < 1.0 - rho.trunc_tol - kHermTol || tr.real() > 1.0 + kHermTol)
    throw std::invalid_argument("state: trace outside [1-trunc_tol, 1]");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitized(m),
                                           Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol)
    throw std::invalid_argument("state: not positive semidefinite");
}

FockDensityMatrix number_state(int n, int dim) {
  if (n < 0 || dim < 1) throw std::invalid_argument("number_state: bad args");
  if (n >= dim)
    throw std::invalid_argument("number_state: n >= dim");
  FockDensityMatrix rho;
  rho.entries = Matrix::Zero(dim, dim);
  rho.entries(n, n) = 1.0;
  return rho;
}

FockDensityMatrix superposition_state(
    const std::vector<std::pair<int, Complex>>& coeffs, int dim) {
  if (coeffs.empty())
    throw std::invalid_argument("superposition_state: empty coefficient list");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  for (const auto& [n, a] : coeffs) {
    if (n < 0 || n >= dim)
      throw std::invalid_argument("superposition_state: index out of range");
    psi(n) += a;
  }
  const double norm = psi.norm();
  if (norm < 1e-300)
    throw std::invalid_argument("superposition_state: zero amplitude vector");
  psi /= norm;
  FockDensityMatrix rho;
  rho.entries = psi * psi.adjoint();
  return rho;
}

FockDensityMatrix thermal_state(double N, int dim) {
  if (N < 0) throw std::invalid_argument("thermal_state: N < 0");
  if (dim < 1) throw std::invalid_argument("thermal_state: dim < 1");
  FockDensityMatrix rho;
  rho.entries = Matrix::Zero(dim, dim);
  const double q = N / (N + 1.0);
  double p = 1.0 / (N + 1.0);
  for (int n = 0; n < dim; ++n) {
    rho.entries(n, n) = p;
    p *= q;
  }
  rho.trunc_tol = std::pow(q, dim);
  return rho;
}

FockDensityMatrix embed_state(const FockDensityMatrix& rho, int dim) {
  if (dim < rho.dim())
    throw std::invalid_argument("embed_state: target dimension too small");
  FockDensityMatrix out;
  out.entries = Matrix::Zero(dim, dim);
  out.entries.topLeftCorner(rho.dim(), rho.dim()) = rho.entries;
  out.trunc_tol = rho.trunc_tol;
  return out;
}

FockDensityMatrix convolve_fock(const FockDensityMatrix& rho,
                                const FockDensityMatrix& sigma,
                                double lambda) {
  const int d = rho.dim();
  if (sigma.dim() != d)
    throw std::invalid_argument("convolve_fock: dimension mismatch");
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("convolve_fock: lambda outside [0,1]");

  const double theta = std::acos(std::sqrt(lambda));

  // Per-block unitaries; the generator conserves total photon number.
  std::vector<Eigen::MatrixXd> u(d);
  for (int N = 0; N < d; ++N)
    u[N] = (theta * generator_block(N)).exp();

  Matrix out = Matrix::Zero(d, d);
  Matrix m, y;
  for (int N = 0; N < d; ++N) {
    for (int Np = 0; Np < d; ++Np) {
      // Coherence block (N, N') of rho (x) sigma in |k, N-k> coordinates.
      m.resize(N + 1, Np + 1);
      for (int a = 0; a <= N; ++a)
        for (int b = 0; b <= Np; ++b)
          m(a, b) = rho.entries(a, b) * sigma.entries(N - a, Np - b);
      y = u[N] * m * u[Np].transpose();
      // Partial trace over mode 2 keeps entries with equal environment count.
      const int diff = N - Np;
      for (int k = std::max(0, diff); k <= N && k - diff <= Np; ++k)
        out(k, k - diff) += y(k, k - diff);
    }
  }

  // Mass of rho (x) sigma outside the retained blocks.
  double kept = 0.0;
  for (int N = 0; N < d; ++N)
    for (int a = 0; a <= N; ++a)
      kept += (rho.entries(a, a) * sigma.entries(N - a, N - a)).real();

  FockDensityMatrix result;
  result.entries = hermitized(out);
  result.trunc_tol =
      rho.trunc_tol + sigma.trunc_tol + std::max(0.0, 1.0 - kept);
  return result;
}

MomentReport mean_and_second_moments(const FockDensityMatrix& rho) {
  const int d = rho.dim();
  MomentReport r;
  r.mean = Complex(0, 0);
  r.asq = Complex(0, 0);
  for (int n = 0; n + 1 < d; ++n)
    r.mean += std::sqrt(double(n + 1)) * rho.entries(n, n + 1);
  for (int n = 0; n < d; ++n) r.nbar += n * rho.entries(n, n).real();
  for (int n = 0; n + 2 < d; ++n)
    r.asq += std::sqrt(double(n + 1) * double(n + 2)) * rho.entries(n, n + 2);
  return r;
}

MomentReport mean_and_second_moments(const FockDensityMatrix& rho,
                                     const std::vector<double>& orders) {
  MomentReport r = mean_and_second_moments(rho);
  for (const double k : orders) r.standard[k] = standard_moment(rho, k).value;
  return r;
}

StandardMoment standard_moment(const FockDensityMatrix& rho, double k) {
  if (k < 0) throw std::invalid_argument("standard_moment: k < 0");
  StandardMoment m;
  for (int n = 0; n < rho.dim(); ++n)
    m.value += std::pow(1.0 + n, 0.5 * k) * rho.entries(n, n).real();
  m.tail_flagged =
      std::pow(1.0 + rho.dim(), 0.5 * k) * rho.trunc_tol > 1e-6;
  return m;
}

GaussianSpec make_gaussian_spec(const Eigen::Matrix2d& gamma) {
  GaussianSpec spec;
  spec.gamma = 0.5 * (gamma + gamma.transpose());
  const double det = spec.gamma.determinant();
  if (det < 1.0 - 1e-9)
    throw std::invalid_argument("GaussianSpec: det(gamma) < 1 (unphysical)");
  spec.nu = std::sqrt(det);
  if ((spec.gamma - spec.nu * Eigen::Matrix2d::Identity())
          .cwiseAbs()
          .maxCoeff() <= 1e-9)
    spec.thermal_N = 0.5 * (spec.nu - 1.0);
  return spec;
}

double gaussian_mean_photon(const GaussianSpec& spec) {
  return 0.25 * spec.gamma.trace() - 0.5;
}

GaussianSpec gaussification(const FockDensityMatrix& rho) {
  const MomentReport m = mean_and_second_moments(rho);
  if (std::abs(m.mean) > kCentredTol)
    throw std::invalid_argument("gaussification: state is not centred");
  const double re = m.asq.real();
  const double im = m.asq.imag();
  Eigen::Matrix2d gamma;
  gamma << 2.0 * m.nbar + 1.0 - 2.0 * re, -2.0 * im,
           -2.0 * im, 2.0 * m.nbar + 1.0 + 2.0 * re;
  GaussianSpec spec = make_gaussian_spec(gamma);
  if (std::abs(m.asq) <= kCentredTol) spec.thermal_N = m.nbar;
  return spec;
}

double von_neumann_entropy(const FockDensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitized(rho.entries),
                                           Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-14) s -= p * std::log(p);
  }
  return s;
}

double relative_entropy_vs_gaussification(const FockDensityMatrix& rho_n,
                                          const GaussianSpec& gauss) {
  if (!gauss.thermal_N)
    throw std::invalid_argument(
        "relative_entropy_vs_gaussification: Gaussification is not thermal");
  const MomentReport m = mean_and_second_moments(rho_n);
  const double tol = 1e-6;
  if (std::abs(m.mean) > tol || std::abs(m.asq) > tol ||
      std::abs(m.nbar - *gauss.thermal_N) > tol)
    throw std::invalid_argument(
        "relative_entropy_vs_gaussification: moment mismatch");
  return g_fn(*gauss.thermal_N) - von_neumann_entropy(rho_n);
}

}  // namespace qclt
