#include "qclt/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qclt {

namespace {

std::string strip_spaces(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

// "n=re", "n=re+i im", "n=re-i im"; entries comma-separated.
std::vector<std::pair<int, Complex>> parse_superpos(const std::string& body) {
  std::vector<std::pair<int, Complex>> coeffs;
  size_t pos = 0;
  const std::string s = strip_spaces(body);
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    const std::string entry = s.substr(pos, comma - pos);
    const size_t eq = entry.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("superpos: expected n=amplitude in '" +
                                  entry + "'");
    const int n = std::stoi(entry.substr(0, eq));
    std::string amp = entry.substr(eq + 1);
    double re = 0, im = 0;
    size_t ipos = amp.find("+i");
    bool neg = false;
    if (ipos == std::string::npos) {
      ipos = amp.find("-i", 1);
      neg = ipos != std::string::npos;
    }
    if (ipos == std::string::npos) {
      re = std::stod(amp);
    } else {
      re = std::stod(amp.substr(0, ipos));
      im = std::stod(amp.substr(ipos + 2));
      if (neg) im = -im;
    }
    coeffs.emplace_back(n, Complex(re, im));
    pos = comma + 1;
  }
  return coeffs;
}

}  // namespace

NamedState resolve_state(const std::string& id, int dim) {
  NamedState st;
  st.id = id;

  auto finish_matrix = [&](FockDensityMatrix rho) {
    st.energy = mean_and_second_moments(rho).nbar + 0.5;
    st.chi = charfun_of_density(rho);
    st.matrix = std::move(rho);
  };

  if (id == "vacuum") {
    finish_matrix(number_state(0, dim));
  } else if (id.rfind("fock", 0) == 0 && id.size() > 4) {
    finish_matrix(number_state(std::stoi(id.substr(4)), dim));
  } else if (id == "plus03") {
    finish_matrix(superposition_state({{0, 1.0}, {3, 1.0}}, dim));
  } else if (id.rfind("thermal:", 0) == 0) {
    finish_matrix(thermal_state(std::stod(id.substr(8)), dim));
  } else if (id.rfind("superpos:", 0) == 0) {
    finish_matrix(superposition_state(parse_superpos(id.substr(9)), dim));
  } else if (id.rfind("squeezed:", 0) == 0) {
    const double eta = std::stod(id.substr(9));
    if (!(eta > 0))
      throw std::invalid_argument("squeezed: eta must be positive");
    Eigen::Matrix2d gamma;
    gamma << eta, 0, 0, 1.0 / eta;
    st.gauss = make_gaussian_spec(gamma);
    st.chi = charfun_gaussian(*st.gauss);
    st.energy = gaussian_mean_photon(*st.gauss) + 0.5;
  } else if (id == "cauchy") {
    st.analytic_only = true;
    st.chi = cauchy_counterexample_charfun();
  } else if (id == "heavy_tail") {
    st.analytic_only = true;
    st.chi = CharFunction(
        CharFunction::Kind::Analytic, "heavy_tail", [](Complex z) -> Complex {
          if (z.real() != 0.0)
            throw std::invalid_argument(
                "heavy_tail: evaluable on the imaginary axis only");
          return heavy_tail_charfun_imaginary(z.imag());
        });
  } else {
    throw std::invalid_argument("unknown state id '" + id + "'");
  }
  return st;
}

FockDensityMatrix random_low_rank_state(std::mt19937_64& rng, int dim,
                                        int rank, double tail_ratio) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(dim, rank);
  for (int i = 0; i < dim; ++i) {
    const double env = std::pow(tail_ratio, 0.5 * i);
    for (int r = 0; r < rank; ++r)
      a(i, r) = env * Complex(gauss(rng), gauss(rng));
  }
  Matrix m = a * a.adjoint();
  m /= m.trace().real();
  FockDensityMatrix rho;
  rho.entries = 0.5 * (m + m.adjoint());
  return rho;
}

FockDensityMatrix random_state(std::mt19937_64& rng, int dim,
                               double tail_ratio) {
  return random_low_rank_state(rng, dim, dim, tail_ratio);
}

FockDensityMatrix random_centred_state(std::mt19937_64& rng, int dim,
                                       double tail_ratio) {
  FockDensityMatrix rho = random_state(rng, dim, tail_ratio);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if ((i - j) % 2 != 0) rho.entries(i, j) = 0.0;
  return rho;
}

}  // namespace qclt
