#pragma once

#include <complex>

namespace lyap::specfun {

using Complex = std::complex<double>;

// Principal branch of log Gamma, continuous off the negative real axis.
Complex ln_gamma(Complex z);

double digamma(double x);
double trigamma(double x);

// erfi(z) = -i erf(iz). Throws NumericalError when exp(z^2) overflows T.
template <class T>
std::complex<T> erfi(std::complex<T> z);

double airy_ai(double x);
double airy_ai_prime(double x);

extern template std::complex<double> erfi(std::complex<double>);
extern template std::complex<long double> erfi(std::complex<long double>);

}  // namespace lyap::specfun
