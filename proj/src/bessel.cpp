#include "qclt/bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qclt {

namespace {

// Horner evaluation of P(x)/Q(x), coefficients in ascending order.
template <int N, int M>
double rational(const double (&p)[N], const double (&q)[M], double x) {
  double pn = p[N - 1];
  for (int i = N - 2; i >= 0; --i) pn = pn * x + p[i];
  double qn = q[M - 1];
  for (int i = M - 2; i >= 0; --i) qn = qn * x + q[i];
  return pn / qn;
}

}  // namespace

// Minimax rational approximations after Russon & Blair / Holoborodko as
// refined in Boost.Math; relative error below 1.3e-16 in double precision.
double bessel_k1(double x) {
  if (x < 0) throw std::invalid_argument("bessel_k1: x < 0");
  if (x == 0) return std::numeric_limits<double>::infinity();

  if (x <= 1.0) {
    static const double Y = 8.69547128677368164e-02;
    static const double P[] = {
        -3.62137953440350228e-03,
        7.11842087490330300e-03,
        1.00302560256614306e-05,
        1.77231085381040811e-06,
    };
    static const double Q[] = {
        1.00000000000000000e+00,
        -4.80414794429043831e-02,
        9.85972641934416525e-04,
        -8.91196859397070326e-06,
    };
    const double a0 = x * x / 4;
    const double a = ((rational(P, Q, a0) + Y) * a0 * a0 + a0 / 2 + 1) * x / 2;

    static const double P2[] = {
        -3.07965757829206184e-01,
        -7.80929703673074907e-02,
        -2.70619343754051620e-03,
        -2.49549522229072008e-05,
    };
    static const double Q2[] = {
        1.00000000000000000e+00,
        -2.36316836412163098e-02,
        2.64524577525962719e-04,
        -1.49749618004162787e-06,
    };
    return rational(P2, Q2, x * x) * x + 1 / x + std::log(x) * a;
  }

  static const double Y = 1.45034217834472656e+00;
  static const double P[] = {
      -1.97028041029226295e-01,
      -2.32408961548087617e+00,
      -7.98269784507699938e+00,
      -2.39968410774221632e+00,
      3.28314043780858713e+01,
      5.67713761158496058e+01,
      3.30907788466509823e+01,
      6.62582288933739787e+00,
      3.08851840645286691e-01,
  };
  static const double Q[] = {
      1.00000000000000000e+00,
      1.41811409298826118e+01,
      7.35979466317556420e+01,
      1.77821793937080859e+02,
      2.11014501598705982e+02,
      1.19425262951064454e+02,
      2.88448064302447607e+01,
      2.27912927104139732e+00,
      2.50358186953478678e-02,
  };
  if (x < 700.0)
    return (rational(P, Q, 1 / x) + Y) * std::exp(-x) / std::sqrt(x);
  const double ex = std::exp(-x / 2);
  return ((rational(P, Q, 1 / x) + Y) * ex / std::sqrt(x)) * ex;
}

}  // namespace qclt
