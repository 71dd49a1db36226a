#include "levycalc/exponent.hpp"

#include <cmath>

#include "levycalc/special.hpp"

namespace levycalc {

namespace {

template <class T>
T centralPair(const std::function<T(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <class T>
T richardsonImpl(const std::function<T(double)>& f, double x, double h,
                 double* errorOut) {
  const T d1 = centralPair(f, x, h);
  const T d2 = centralPair(f, x, 0.5 * h);
  const T extrap = (4.0 * d2 - d1) / 3.0;
  if (errorOut) *errorOut = std::abs(d2 - d1) / 3.0;
  return extrap;
}

// forward/backward 3-point derivative with one halving step
double oneSided(const std::function<double(double)>& f, double x, double h,
                int sign, double* errorOut) {
  auto d = [&](double hh) {
    return sign *
           (-3.0 * f(x) + 4.0 * f(x + sign * hh) - f(x + sign * 2.0 * hh)) /
           (2.0 * hh);
  };
  const double d1 = d(h);
  const double d2 = d(0.5 * h);
  if (errorOut) *errorOut = std::abs(d2 - d1);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

double richardsonDerivative(const std::function<double(double)>& f, double x,
                            double h, double* errorOut) {
  return richardsonImpl<double>(f, x, h, errorOut);
}

std::complex<double> richardsonDerivative(
    const std::function<std::complex<double>(double)>& f, double x, double h,
    double* errorOut) {
  return richardsonImpl<std::complex<double>>(f, x, h, errorOut);
}

LevyExponent exponent(const LevyTriple& t) {
  auto rep = validateMeasure(t.measure);
  if (!rep.pass)
    throw ValidationError("exponent of an invalid triple: " + rep.detail);
  const bool closed =
      t.measure.isZero() ||
      std::holds_alternative<LevyMeasure::Discrete>(t.measure.node()) ||
      std::holds_alternative<LevyMeasure::StableMixture>(t.measure.node());
  LevyExponent e;
  e.provenance = closed ? LevyExponent::Provenance::ClosedForm
                        : LevyExponent::Provenance::Quadrature;
  const double a = t.shift;
  const double R = t.gaussVar;
  const LevyMeasure m = t.measure;
  e.value = [a, R, m](double y) {
    std::complex<double> phi(-0.5 * R * y * y, a * y);
    if (!m.isZero()) phi += exponentJump(m, y);
    return phi;
  };
  return e;
}

LevyExponent exponentTransform(const LevyExponent& psi, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("transform order must be nonnegative");
  if (alpha == 0.0) return psi;
  LevyExponent e;
  e.provenance = LevyExponent::Provenance::Quadrature;
  auto inner = psi.value;
  e.value = [inner, alpha](double y) -> std::complex<double> {
    if (y == 0.0) return {0.0, 0.0};
    return quad::tauIntegral(alpha,
                             [&](double t) { return inner(t * y); })
        .value;
  };
  return e;
}

LevyExponent kernelCF(const LevyTriple& t, int m) {
  if (m < 1) throw std::invalid_argument("kernel order must be a positive integer");
  auto rep = validateMeasure(t.measure);
  if (!rep.pass)
    throw ValidationError("kernel exponent of an invalid triple: " + rep.detail);
  const double a = t.shift;
  const double R = t.gaussVar;
  const double shiftCoeff = std::pow(2.0, -m);
  const double gaussCoeff = std::pow(3.0, -m);
  const LevyMeasure measure = t.measure;
  const double alpha = m;

  LevyExponent e;
  e.provenance = LevyExponent::Provenance::Kernel;
  e.value = [a, R, shiftCoeff, gaussCoeff, measure, alpha](double y) {
    std::complex<double> phi(-0.5 * gaussCoeff * R * y * y,
                             shiftCoeff * a * y);
    if (measure.isZero() || y == 0.0) return phi;
    if (const auto* d = std::get_if<LevyMeasure::Discrete>(&measure.node())) {
      // characteristic function of the time-change law, by its power series,
      // inside the seed jump integral
      for (const auto& atom : d->atoms) {
        std::complex<double> term = gCharFn(alpha, y * atom.x) - 1.0;
        if (std::abs(atom.x) <= 1.0)
          term -= std::complex<double>(0.0, shiftCoeff * y * atom.x);
        phi += atom.mass * term;
      }
      return phi;
    }
    // remaining variants: average the seed jump exponent over the
    // time-change law (same integral after swapping integration order)
    phi += quad::tauIntegral(
               alpha, [&](double g) { return exponentJump(measure, g * y); })
               .value;
    return phi;
  };
  return e;
}

std::complex<double> dOperator(const LevyExponent& g, double y, double stepRel,
                               double unstableTol) {
  if (y == 0.0) return g.value(0.0);
  const double h = std::abs(y) * stepRel;
  double err = 0.0;
  const auto deriv = richardsonDerivative(g.value, y, h, &err);
  const auto result = g.value(y) + y * deriv;
  if (err * std::abs(y) > unstableTol * (1.0 + std::abs(result)))
    throw DifferentiationError(
        "DifferentiationUnstable: extrapolation disagreement above tolerance",
        err * std::abs(y));
  return result;
}

double aOperatorFn(const std::function<double(double)>& f, double r,
                   double stepRel, StencilSide side, double* errorOut) {
  const double h = r * stepRel;
  double err = 0.0;
  double deriv;
  switch (side) {
    case StencilSide::Left:
      deriv = oneSided(f, r, h, -1, &err);
      break;
    case StencilSide::Right:
      deriv = oneSided(f, r, h, +1, &err);
      break;
    default:
      deriv = richardsonDerivative(f, r, h, &err);
  }
  if (errorOut) *errorOut = err;
  return r * deriv - f(r);
}

double aOperator(const SpectralFunction& L, int direction, double r,
                 double stepRel, StencilSide side, double unstableTol) {
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  auto f = [&](double x) { return L.value(direction, x); };
  double err = 0.0;
  const double result = aOperatorFn(f, r, stepRel, side, &err);
  if (err * r > unstableTol * (1.0 + std::abs(result)))
    throw DifferentiationError(
        "DifferentiationUnstable: spectral derivative unstable at this radius",
        err * r);
  return result;
}

}  // namespace levycalc
