#pragma once

#include <complex>
#include <functional>

#include "levycalc/measure.hpp"

// Levy exponent evaluation and the two numerical inverse operators: on
// exponents, g -> g(y) + y g'(y); on spectral tails, L -> r L'(r) - L(r).
// Three independent routes to the exponent of a transformed law are kept:
// via its triple, via composing the seed exponent with the time change, and
// via the characteristic-function kernel of the time-change law.

namespace levycalc {

struct LevyExponent {
  enum class Provenance { ClosedForm, Quadrature, Kernel };
  std::function<std::complex<double>(double)> value;
  Provenance provenance = Provenance::ClosedForm;
  std::complex<double> operator()(double y) const { return value(y); }
};

// Phi(y) = i a y - R y^2 / 2 + jump integral.
LevyExponent exponent(const LevyTriple& t);

// Composition with the gamma time change: integral of psi(t y) dtau_alpha(t).
LevyExponent exponentTransform(const LevyExponent& psi, double alpha);

// Exponent of the m-fold transformed law built from the characteristic
// function of the time-change variable inside the seed's jump integral,
// with compensator coefficient 2^-m.
LevyExponent kernelCF(const LevyTriple& t, int m);

// Richardson central difference of a scalar or complex function.
// errorOut (optional) receives the extrapolation disagreement.
double richardsonDerivative(const std::function<double(double)>& f, double x,
                            double h, double* errorOut = nullptr);
std::complex<double> richardsonDerivative(
    const std::function<std::complex<double>(double)>& f, double x, double h,
    double* errorOut = nullptr);

// g(y) + y g'(y). Throws DifferentiationError when the two-step
// extrapolation disagreement exceeds unstableTol.
std::complex<double> dOperator(const LevyExponent& g, double y,
                               double stepRel = 1e-3,
                               double unstableTol = 1e-4);

enum class StencilSide { Central, Left, Right };

// r L'(direction, r) - L(direction, r). Uses a one-sided stencil on request
// (for radii adjacent to tail kinks).
double aOperator(const SpectralFunction& L, int direction, double r,
                 double stepRel = 1e-3,
                 StencilSide side = StencilSide::Central,
                 double unstableTol = 1e-4);

// Same, on a bare radial function.
double aOperatorFn(const std::function<double(double)>& f, double r,
                   double stepRel = 1e-3,
                   StencilSide side = StencilSide::Central,
                   double* errorOut = nullptr);

}  // namespace levycalc
