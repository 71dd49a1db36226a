#pragma once

#include <complex>
#include <vector>

#include "levycalc/rng.hpp"

// Incomplete gamma functions, the gamma time-change on (0,1), and the law of
// the exponentiated-gamma variable that drives it: moments, characteristic
// function, sampling.

namespace levycalc {

// Regularized incomplete gamma pair: lowerGamma + upperGamma = 1.
double regularizedLowerGamma(double shape, double x);
double regularizedUpperGamma(double shape, double x);

// Upper incomplete gamma, unnormalized: integral of e^-t t^(shape-1) over
// (x, inf). x = 0 gives the complete gamma function.
double incompleteGamma(double shape, double x);

// CDF of the time change on (0,1]: the weight (-ln u)^(alpha-1)/Gamma(alpha)
// integrated from 0 to t, evaluated through the upper-gamma identity rather
// than direct quadrature (the u -> 0 endpoint is singular).
double tauCdf(double alpha, double t);

// s-th moment of the time-change law: (s+1)^-alpha, s > -1.
double gMoment(double alpha, double s);

// Partial moment: integral of t^s over (0,c) against the time change.
double gPartialMoment(double alpha, double s, double c);

// Characteristic function of the time-change law. Power series with
// term-magnitude truncation where double precision allows; the entire-series
// cancellation past |t| ~ 20 is avoided by switching to the gamma-weighted
// integral form.
std::complex<double> gCharFn(double alpha, double t);

// n draws of exp(-G) with G standard gamma(alpha); strictly inside (0,1).
std::vector<double> sampleG(double alpha, rng::Stream& stream, std::size_t n);

}  // namespace levycalc
