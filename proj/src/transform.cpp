#include "levycalc/transform.hpp"

#include <algorithm>
#include <cmath>

#include "levycalc/special.hpp"

namespace levycalc {

TabulatedFunction TabulatedFunction::sample(
    const std::function<double(double)>& fn, double a, double b, int points) {
  if (points < 2) throw std::invalid_argument("tabulation needs at least 2 points");
  TabulatedFunction f;
  f.t.resize(points);
  f.v.resize(points);
  for (int i = 0; i < points; ++i) {
    f.t[i] = a + (b - a) * i / (points - 1);
    f.v[i] = fn(f.t[i]);
  }
  return f;
}

double TabulatedFunction::operator()(double x) const {
  if (t.size() < 2) throw DocumentError("tabulation needs at least 2 points");
  if (x <= t.front()) return v.front();
  if (x >= t.back()) return v.back();
  auto it = std::upper_bound(t.begin(), t.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - t.begin());
  const double w = (x - t[i - 1]) / (t[i] - t[i - 1]);
  return v[i - 1] + w * (v[i] - v[i - 1]);
}

void TabulatedFunction::validate(bool requireMonotone) const {
  if (t.size() < 2 || t.size() != v.size())
    throw QuadratureError("GridTooCoarse: tabulation needs matched grids of >= 2 points", 0.0);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (!(t[i + 1] > t[i]))
      throw std::invalid_argument("tabulation grid must be strictly increasing");
    if (requireMonotone && v[i + 1] < v[i])
      throw std::invalid_argument("time change must be nondecreasing");
  }
  for (double x : v)
    if (!std::isfinite(x)) throw std::invalid_argument("tabulated values must be finite");
}

LevyTriple jAlpha(const LevyTriple& t, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("transform order must be nonnegative");
  if (alpha == 0.0) return t;
  const double shift =
      std::pow(2.0, -alpha) *
      (t.shift + (t.measure.isZero() ? 0.0 : wIntegral(t.measure, alpha)));
  const double gaussVar = std::pow(3.0, -alpha) * t.gaussVar;
  LevyMeasure measure = t.measure;
  if (!t.measure.isZero()) {
    if (const auto* mix =
            std::get_if<LevyMeasure::StableMixture>(&t.measure.node())) {
      measure = LevyMeasure::stableMixture(stableMixtureJ(mix->atoms, alpha));
    } else {
      measure = LevyMeasure::jTransformed(t.measure, alpha);
    }
  }
  return LevyTriple{shift, gaussVar, std::move(measure)};
}

namespace {

// integral of e^-s times the truncated mean at radius e^s over s > 0;
// closed for atoms (each contributes mass * sign beyond radius 1) and for
// stable mixtures (direction * weight / z), quadrature otherwise.
double exponentialShiftCorrection(const LevyMeasure& m) {
  if (const auto* d = std::get_if<LevyMeasure::Discrete>(&m.node())) {
    double acc = 0.0;
    for (const auto& a : d->atoms)
      if (std::abs(a.x) > 1.0) acc += a.mass * (a.x > 0.0 ? 1.0 : -1.0);
    return acc;
  }
  if (const auto* s = std::get_if<LevyMeasure::StableMixture>(&m.node())) {
    double acc = 0.0;
    for (const auto& a : s->atoms) acc += a.direction * a.weight / a.z;
    return acc;
  }
  if (const auto* s = std::get_if<LevyMeasure::Sum>(&m.node())) {
    double acc = 0.0;
    for (const auto& term : s->terms) acc += exponentialShiftCorrection(term);
    return acc;
  }
  std::vector<double> breaks;
  for (double rho : atomRadii(m)) {
    const double s = std::log(rho);
    if (s > 0.0) breaks.push_back(s);
  }
  return quad::expHorizonIntegral(
             [&](double s) { return std::exp(-s) * truncatedMean(m, std::exp(s)); },
             breaks)
      .value;
}

}  // namespace

LevyTriple iTransform(const LevyTriple& t) {
  double shift = t.shift;
  LevyMeasure measure = t.measure;
  if (!t.measure.isZero()) {
    const double logMoment = logMomentAboveOne(t.measure);
    if (!std::isfinite(logMoment))
      throw ValidationError(
          "LogMomentDiverges: exponential-horizon transform requires a finite "
          "log-moment");
    shift += exponentialShiftCorrection(t.measure);
    if (const auto* mix =
            std::get_if<LevyMeasure::StableMixture>(&t.measure.node())) {
      measure = LevyMeasure::stableMixture(stableMixtureI(mix->atoms));
    } else {
      measure = LevyMeasure::iTransformed(t.measure);
    }
  }
  return LevyTriple{shift, 0.5 * t.gaussVar, std::move(measure)};
}

LevyTriple partialIntegralTriple(const LevyTriple& t, double c) {
  if (!(c > 0.0) || !(c < 1.0))
    throw std::invalid_argument("partial-integral cutoff must lie in (0,1)");
  const double gaussVar = t.gaussVar * (1.0 - c * c * c) / 3.0;
  double shift = t.shift * (1.0 - c * c) / 2.0;
  LevyMeasure measure = LevyMeasure::zero();
  if (!t.measure.isZero()) {
    std::vector<double> breaks;
    for (double rho : atomRadii(t.measure)) {
      const double tb = 1.0 / rho;
      if (tb > c && tb < 1.0) breaks.push_back(tb);
    }
    const LevyMeasure& m = t.measure;
    shift += quad::integrate(
                 [&](double tt) { return tt * truncatedMean(m, 1.0 / tt); }, c,
                 1.0, breaks)
                 .value;
    measure = LevyMeasure::hKernel(t.measure, {KernelSegment{c, 1.0, c, 1.0, 1.0}});
  }
  return LevyTriple{shift, gaussVar, std::move(measure)};
}

LevyTriple generalTransform(const LevyTriple& t, const TabulatedFunction& h,
                            const TabulatedFunction& r) {
  h.validate(false);
  r.validate(true);
  if (h.t.front() != r.t.front() || h.t.back() != r.t.back())
    throw std::invalid_argument("kernel and time change must share an interval");

  // merge knots; h stays linear and the time density constant on each piece
  std::vector<double> knots = h.t;
  knots.insert(knots.end(), r.t.begin(), r.t.end());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::vector<KernelSegment> segments;
  double hIntegral = 0.0;   // integral of h dr
  double h2Integral = 0.0;  // integral of h^2 dr
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double t0 = knots[i], t1 = knots[i + 1];
    const double dt = t1 - t0;
    const double h0 = h(t0), h1 = h(t1);
    const double density = (r(t1) - r(t0)) / dt;
    const double slope = (h1 - h0) / dt;
    segments.push_back(KernelSegment{t0, t1, h0, slope, density});
    hIntegral += density * (h0 * dt + 0.5 * slope * dt * dt);
    h2Integral += density * (h0 * h0 * dt + h0 * slope * dt * dt +
                             slope * slope * dt * dt * dt / 3.0);
  }

  double shift = t.shift * hIntegral;
  LevyMeasure measure = LevyMeasure::zero();
  if (!t.measure.isZero()) {
    const auto radii = atomRadii(t.measure);
    const LevyMeasure& m = t.measure;
    double errAcc = 0.0;
    for (const auto& seg : segments) {
      if (seg.density == 0.0) continue;
      std::vector<double> levels;
      for (double rho : radii) levels.push_back(1.0 / rho);
      std::vector<double> breaks;
      if (seg.hSlope != 0.0) {
        for (double v : levels) {
          for (double target : {v, -v}) {
            const double tb = seg.t0 + (target - seg.h0) / seg.hSlope;
            if (tb > seg.t0 && tb < seg.t1) breaks.push_back(tb);
          }
        }
        const double tz = seg.t0 - seg.h0 / seg.hSlope;
        if (tz > seg.t0 && tz < seg.t1) breaks.push_back(tz);
        std::sort(breaks.begin(), breaks.end());
      }
      auto piece = quad::integrate(
          [&](double tt) {
            const double ht = seg.h(tt);
            if (ht == 0.0) return 0.0;
            return seg.density * ht * truncatedMean(m, 1.0 / std::abs(ht));
          },
          seg.t0, seg.t1, breaks);
      shift += piece.value;
      errAcc += piece.error;
    }
    const auto& opt = quad::defaults();
    if (errAcc > std::max(opt.absTol, opt.relTol * std::abs(shift)) * 1e2)
      throw QuadratureError("GridTooCoarse: shift integral error above tolerance",
                            errAcc);
    measure = LevyMeasure::hKernel(t.measure, segments);
  }
  return LevyTriple{shift, h2Integral * t.gaussVar, std::move(measure)};
}

std::vector<StableAtom> stableMixtureJ(std::vector<StableAtom> sigma, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("transform order must be nonnegative");
  for (auto& a : sigma) a.weight *= std::pow(a.z + 1.0, -alpha);
  return sigma;
}

std::vector<StableAtom> stableMixtureI(std::vector<StableAtom> sigma) {
  for (auto& a : sigma) a.weight /= a.z;
  return sigma;
}

}  // namespace levycalc
