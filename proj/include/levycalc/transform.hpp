#pragma once

#include <functional>
#include <vector>

#include "levycalc/measure.hpp"

// Random-integral transforms on triples. The core map sends the law of Y(1)
// to the law of the integral of t dY over the gamma time-change on (0,1);
// closed forms: shift 2^-alpha (a + W), Gaussian variance 3^-alpha R, and the
// lazily transformed measure. The exponential-horizon map integrates e^-t dY
// over (0,inf). The general transform handles arbitrary tabulated kernels.

namespace levycalc {

// Piecewise-linear tabulation on [front(t), back(t)].
struct TabulatedFunction {
  std::vector<double> t;
  std::vector<double> v;

  static TabulatedFunction sample(const std::function<double(double)>& fn,
                                  double a, double b, int points);
  double operator()(double x) const;
  void validate(bool requireMonotone) const;
};

// Gamma time-change transform of order alpha >= 0 (alpha = 0 is the identity).
LevyTriple jAlpha(const LevyTriple& t, double alpha);

// Law of the integral of e^-t dY over (0, inf); requires a seed measure with
// finite log-moment.
LevyTriple iTransform(const LevyTriple& t);

// Cofactor law: integral of t dY(t) restricted to [c, 1).
LevyTriple partialIntegralTriple(const LevyTriple& t, double c);

// Transform with tabulated kernel h and nondecreasing time change r on a
// common interval. Throws QuadratureError("GridTooCoarse...") when the shift
// integrals cannot reach tolerance on the supplied grids.
LevyTriple generalTransform(const LevyTriple& t, const TabulatedFunction& h,
                            const TabulatedFunction& r);

// Closed-form action of the transforms on stable-mixture data:
// gamma time-change multiplies weights by (z+1)^-alpha, the exponential
// horizon divides them by z.
std::vector<StableAtom> stableMixtureJ(std::vector<StableAtom> sigma,
                                       double alpha = 1.0);
std::vector<StableAtom> stableMixtureI(std::vector<StableAtom> sigma);

}  // namespace levycalc
