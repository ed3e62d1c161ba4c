#pragma once

namespace qclt {

// Modified Bessel function of the second kind K1, double precision.
double bessel_k1(double x);

}  // namespace qclt
