#include "levycalc/measure.hpp"

#include <algorithm>
#include <cmath>

#include "levycalc/special.hpp"

namespace levycalc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

// (e^{ia} - 1) with the real part written as -2 sin^2(a/2).
std::complex<double> expm1i(double a) {
  const double s = std::sin(0.5 * a);
  return {-2.0 * s * s, std::sin(a)};
}

// e^{ia} - 1 - ia, series-protected near zero.
std::complex<double> expm1iCompensated(double a) {
  if (std::abs(a) < 1e-4) {
    const double a2 = a * a;
    return {-0.5 * a2 * (1.0 - a2 / 12.0), -a * a2 / 6.0 * (1.0 - a2 / 20.0)};
  }
  auto v = expm1i(a);
  return {v.real(), v.imag() - a};
}

// Jump exponent of the pure stable radial tail w^{-z-1} dw in direction +1,
// with the |x| <= 1 truncation: closed form via Gamma(-z) (-i beta)^z plus
// the compensator mismatch term; the z = 1 case carries the log term.
std::complex<double> stableKernel(double z, double beta) {
  if (beta == 0.0) return {0.0, 0.0};
  const double ab = std::abs(beta);
  const double sg = beta > 0.0 ? 1.0 : -1.0;
  if (std::abs(z - 1.0) < 1e-9) {
    return {-0.5 * kPi * ab, beta * (1.0 - kEulerGamma - std::log(ab))};
  }
  const double mod = std::tgamma(-z) * std::pow(ab, z);
  std::complex<double> core(mod * std::cos(0.5 * kPi * z),
                            -sg * mod * std::sin(0.5 * kPi * z));
  const double comp = (z < 1.0) ? -beta / (1.0 - z) : beta / (z - 1.0);
  return core + std::complex<double>(0.0, comp);
}

// (1/Gamma(a)) * integral over u > 0 of IncGamma(a, 2u) e^{(1-z) u} du.
double stableShiftFactor(double alpha, double z) {
  const double s = 1.0 - z;
  if (std::abs(s) < 1e-7) {
    return 0.5 * alpha + s * alpha * (1.0 + alpha) / 8.0;
  }
  return (std::pow(2.0 / (1.0 + z), alpha) - 1.0) / s;
}

// integral of x over radii (1, b] of the unit stable tail w^{-z}... i.e.
// antiderivative of w^{-z} between 1 and b (signed for b < 1).
double stableAnnulus(double z, double b) {
  if (b == 1.0) return 0.0;
  if (std::abs(z - 1.0) < 1e-12) return std::log(b);
  return (std::pow(b, 1.0 - z) - 1.0) / (1.0 - z);
}

// cumulative first moment of the time change: integral of t over (0, c).
double cumFirstMoment(double alpha, double c) {
  if (c <= 0.0) return 0.0;
  if (c >= 1.0) return gMoment(alpha, 1.0);
  return gPartialMoment(alpha, 1.0, c);
}

std::vector<double> scaledBreaks(const std::vector<double>& radii, double invScale) {
  // t-values where |t| * radius crosses 1, for t in (0,1): t = invScale / radius
  std::vector<double> out;
  for (double rho : radii) {
    const double t = invScale / rho;
    if (t > 0.0 && t < 1.0) out.push_back(t);
  }
  return out;
}

// Solutions of |h(t)| = v and h(t) = 0 inside a kernel segment.
std::vector<double> segmentCrossings(const KernelSegment& seg,
                                     const std::vector<double>& levels) {
  std::vector<double> out;
  if (seg.hSlope == 0.0) return out;
  auto push = [&](double t) {
    if (t > seg.t0 && t < seg.t1) out.push_back(t);
  };
  push(seg.t0 + (0.0 - seg.h0) / seg.hSlope);
  for (double v : levels) {
    push(seg.t0 + (v - seg.h0) / seg.hSlope);
    push(seg.t0 + (-v - seg.h0) / seg.hSlope);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// --- construction -------------------------------------------------------------

LevyMeasure LevyMeasure::discrete(std::vector<DiscreteAtom> atoms) {
  for (const auto& a : atoms) {
    if (a.x == 0.0 || !std::isfinite(a.x))
      throw ValidationError("discrete atom positions must be finite and nonzero");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass))
      throw ValidationError("discrete atom masses must be positive");
  }
  return LevyMeasure(Variant(Discrete{std::move(atoms)}));
}

LevyMeasure LevyMeasure::stableMixture(std::vector<StableAtom> atoms) {
  for (const auto& a : atoms) {
    if (a.direction != 1 && a.direction != -1)
      throw ValidationError("stable mixture direction must be +1 or -1");
    if (!(a.z > 0.0) || !(a.z < 2.0))
      throw ValidationError("stable mixture index must lie strictly inside (0,2)");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      throw ValidationError("stable mixture weights must be positive");
  }
  return LevyMeasure(Variant(StableMixture{std::move(atoms)}));
}

LevyMeasure LevyMeasure::jTransformed(LevyMeasure seed, double alpha) {
  if (!(alpha > 0.0))
    throw ValidationError("time-change exponent must be positive");
  return LevyMeasure(Variant(
      JTransformed{std::make_shared<const LevyMeasure>(std::move(seed)), alpha}));
}

LevyMeasure LevyMeasure::iTransformed(LevyMeasure seed) {
  const double logMoment = logMomentAboveOne(seed);
  if (!std::isfinite(logMoment))
    throw ValidationError(
        "LogMomentDiverges: exponential-horizon image requires a seed with "
        "finite log-moment");
  return LevyMeasure(
      Variant(ITransformed{std::make_shared<const LevyMeasure>(std::move(seed))}));
}

LevyMeasure LevyMeasure::sum(std::vector<LevyMeasure> terms) {
  return LevyMeasure(Variant(Sum{std::move(terms)}));
}

LevyMeasure LevyMeasure::hKernel(LevyMeasure seed, std::vector<KernelSegment> segments) {
  for (const auto& s : segments) {
    if (!(s.t1 > s.t0)) throw ValidationError("kernel segment must have positive length");
    if (s.density < 0.0) throw ValidationError("time measure density must be nonnegative");
  }
  return LevyMeasure(Variant(
      HKernel{std::make_shared<const LevyMeasure>(std::move(seed)), std::move(segments)}));
}

bool LevyMeasure::isZero() const {
  return std::visit(
      Overload{
          [](const Discrete& d) { return d.atoms.empty(); },
          [](const StableMixture& s) { return s.atoms.empty(); },
          [](const JTransformed& j) { return j.seed->isZero(); },
          [](const ITransformed& i) { return i.seed->isZero(); },
          [](const Sum& s) {
            return std::all_of(s.terms.begin(), s.terms.end(),
                               [](const LevyMeasure& t) { return t.isZero(); });
          },
          [](const HKernel& h) { return h.seed->isZero(); },
      },
      node());
}

bool LevyMeasure::operator==(const LevyMeasure& other) const {
  if (node_ == other.node_) return true;
  if (node().index() != other.node().index()) return false;
  return std::visit(
      Overload{
          [&](const Discrete& a) { return a == std::get<Discrete>(other.node()); },
          [&](const StableMixture& a) {
            return a == std::get<StableMixture>(other.node());
          },
          [&](const JTransformed& a) {
            const auto& b = std::get<JTransformed>(other.node());
            return a.alpha == b.alpha && *a.seed == *b.seed;
          },
          [&](const ITransformed& a) {
            return *a.seed == *std::get<ITransformed>(other.node()).seed;
          },
          [&](const Sum& a) {
            const auto& b = std::get<Sum>(other.node());
            return a.terms == b.terms;
          },
          [&](const HKernel& a) {
            const auto& b = std::get<HKernel>(other.node());
            return a.segments == b.segments && *a.seed == *b.seed;
          },
      },
      node());
}

// --- tail function ------------------------------------------------------------

double tailFunction(const LevyMeasure& m, int direction, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("tail radius must be positive");
  return std::visit(
      Overload{
          [&](const LevyMeasure::Discrete& d) {
            double tail = 0.0;
            for (const auto& a : d.atoms)
              if ((a.x > 0.0 ? 1 : -1) == direction && std::abs(a.x) > r)
                tail += a.mass;
            return -tail;
          },
          [&](const LevyMeasure::StableMixture& s) {
            double tail = 0.0;
            for (const auto& a : s.atoms)
              if (a.direction == direction)
                tail += a.weight * std::pow(r, -a.z) / a.z;
            return -tail;
          },
          [&](const LevyMeasure::JTransformed& j) {
            if (const auto* d =
                    std::get_if<LevyMeasure::Discrete>(&j.seed->node())) {
              // time-change CDF in closed form
              double acc = 0.0;
              for (const auto& a : d->atoms) {
                const double ax = std::abs(a.x);
                if ((a.x > 0.0 ? 1 : -1) == direction && ax > r)
                  acc += a.mass * regularizedLowerGamma(j.alpha, std::log(ax / r));
              }
              return -acc;
            }
            auto breaks = scaledBreaks(atomRadii(*j.seed), r);
            return quad::tauIntegral(
                       j.alpha,
                       [&](double t) { return tailFunction(*j.seed, direction, r / t); },
                       breaks)
                .value;
          },
          [&](const LevyMeasure::ITransformed& i) {
            if (const auto* d =
                    std::get_if<LevyMeasure::Discrete>(&i.seed->node())) {
              double acc = 0.0;
              for (const auto& a : d->atoms) {
                const double ax = std::abs(a.x);
                if ((a.x > 0.0 ? 1 : -1) == direction && ax > r)
                  acc += a.mass * std::log(ax / r);
              }
              return -acc;
            }
            std::vector<double> breaks;
            for (double rho : atomRadii(*i.seed))
              if (rho > r) breaks.push_back(std::log(rho / r));
            return quad::expHorizonIntegral(
                       [&](double s) {
                         return tailFunction(*i.seed, direction, r * std::exp(s));
                       },
                       breaks)
                .value;
          },
          [&](const LevyMeasure::Sum& s) {
            double acc = 0.0;
            for (const auto& t : s.terms) acc += tailFunction(t, direction, r);
            return acc;
          },
          [&](const LevyMeasure::HKernel& h) {
            double acc = 0.0;
            const auto radii = atomRadii(*h.seed);
            for (const auto& seg : h.segments) {
              if (seg.density == 0.0) continue;
              std::vector<double> levels;  // |h| = r / rho
              for (double rho : radii) levels.push_back(r / rho);
              auto breaks = segmentCrossings(seg, levels);
              acc += quad::integrate(
                         [&](double t) {
                           const double ht = seg.h(t);
                           if (ht == 0.0) return 0.0;
                           const int dir = ht > 0.0 ? direction : -direction;
                           return seg.density *
                                  tailFunction(*h.seed, dir, r / std::abs(ht));
                         },
                         seg.t0, seg.t1, breaks)
                         .value;
            }
            return acc;
          },
      },
      m.node());
}

// --- truncated mean -----------------------------------------------------------

double truncatedMean(const LevyMeasure& m, double b) {
  if (!(b > 0.0)) throw std::invalid_argument("truncation radius must be positive");
  if (b == 1.0) return 0.0;
  return std::visit(
      Overload{
          [&](const LevyMeasure::Discrete& d) {
            double acc = 0.0;
            const double lo = std::min(1.0, b), hi = std::max(1.0, b);
            for (const auto& a : d.atoms) {
              const double ax = std::abs(a.x);
              if (ax > lo && ax <= hi) acc += a.x * a.mass;
            }
            return b >= 1.0 ? acc : -acc;
          },
          [&](const LevyMeasure::StableMixture& s) {
            double acc = 0.0;
            for (const auto& a : s.atoms)
              acc += a.direction * a.weight * stableAnnulus(a.z, b);
            return acc;
          },
          [&](const LevyMeasure::JTransformed& j) {
            if (const auto* d =
                    std::get_if<LevyMeasure::Discrete>(&j.seed->node())) {
              double acc = 0.0;
              for (const auto& a : d->atoms) {
                const double ax = std::abs(a.x);
                acc += a.x * a.mass *
                       (cumFirstMoment(j.alpha, b / ax) -
                        cumFirstMoment(j.alpha, 1.0 / ax));
              }
              return acc;
            }
            std::vector<double> breaks;
            for (double rho : atomRadii(*j.seed)) {
              for (double lvl : {1.0 / rho, b / rho})
                if (lvl > 0.0 && lvl < 1.0) breaks.push_back(lvl);
            }
            return quad::tauIntegral(
                       j.alpha,
                       [&](double t) {
                         return t * (truncatedMean(*j.seed, b / t) -
                                     truncatedMean(*j.seed, 1.0 / t));
                       },
                       breaks)
                .value;
          },
          [&](const LevyMeasure::ITransformed& i) {
            if (const auto* d =
                    std::get_if<LevyMeasure::Discrete>(&i.seed->node())) {
              double acc = 0.0;
              for (const auto& a : d->atoms) {
                const double ax = std::abs(a.x);
                acc += a.x * a.mass *
                       (std::min(1.0, b / ax) - std::min(1.0, 1.0 / ax));
              }
              return acc;
            }
            std::vector<double> breaks;
            for (double rho : atomRadii(*i.seed)) {
              for (double s : {std::log(rho), std::log(rho / b)})
                if (s > 0.0) breaks.push_back(s);
            }
            return quad::expHorizonIntegral(
                       [&](double s) {
                         const double e = std::exp(-s);
                         return e * (truncatedMean(*i.seed, b / e) -
                                     truncatedMean(*i.seed, 1.0 / e));
                       },
                       breaks)
                .value;
          },
          [&](const LevyMeasure::Sum& s) {
            double acc = 0.0;
            for (const auto& t : s.terms) acc += truncatedMean(t, b);
            return acc;
          },
          [&](const LevyMeasure::HKernel& h) {
            double acc = 0.0;
            const auto radii = atomRadii(*h.seed);
            for (const auto& seg : h.segments) {
              if (seg.density == 0.0) continue;
              std::vector<double> levels;  // |h| = 1/rho and b/rho
              for (double rho : radii) {
                levels.push_back(1.0 / rho);
                levels.push_back(b / rho);
              }
              auto breaks = segmentCrossings(seg, levels);
              acc += quad::integrate(
                         [&](double t) {
                           const double ht = seg.h(t);
                           if (ht == 0.0) return 0.0;
                           const double ah = std::abs(ht);
                           return seg.density * ht *
                                  (truncatedMean(*h.seed, b / ah) -
                                   truncatedMean(*h.seed, 1.0 / ah));
                         },
                         seg.t0, seg.t1, breaks)
                         .value;
            }
            return acc;
          },
      },
      m.node());
}

// --- shift integral of the time-change transform --------------------------------

double wIntegralAt(const LevyMeasure& m, double alpha, double c) {
  if (c == 0.0) return 0.0;
  const double ac = std::abs(c);
  return std::visit(
      Overload{
          [&](const LevyMeasure::Discrete& d) {
            double acc = 0.0;
            for (const auto& a : d.atoms) {
              const double ax = std::abs(a.x) * ac;
              if (ax > 1.0)
                acc += c * a.x * a.mass *
                       regularizedUpperGamma(alpha, 2.0 * std::log(ax));
            }
            return acc;
          },
          [&](const LevyMeasure::StableMixture& s) {
            double acc = 0.0;
            const double sg = c > 0.0 ? 1.0 : -1.0;
            for (const auto& a : s.atoms)
              acc += a.direction * sg * a.weight * std::pow(ac, a.z) *
                     stableShiftFactor(alpha, a.z);
            return acc;
          },
          [&](const LevyMeasure::JTransformed& j) {
            auto breaks = scaledBreaks(atomRadii(*j.seed), 1.0 / ac);
            return quad::tauIntegral(
                       j.alpha,
                       [&](double t) { return wIntegralAt(*j.seed, alpha, c * t); },
                       breaks)
                .value;
          },
          [&](const LevyMeasure::ITransformed& i) {
            std::vector<double> breaks;
            for (double rho : atomRadii(*i.seed)) {
              const double s = std::log(rho * ac);
              if (s > 0.0) breaks.push_back(s);
            }
            return quad::expHorizonIntegral(
                       [&](double s) {
                         return wIntegralAt(*i.seed, alpha, c * std::exp(-s));
                       },
                       breaks)
                .value;
          },
          [&](const LevyMeasure::Sum& s) {
            double acc = 0.0;
            for (const auto& t : s.terms) acc += wIntegralAt(t, alpha, c);
            return acc;
          },
          [&](const LevyMeasure::HKernel& h) {
            double acc = 0.0;
            const auto radii = atomRadii(*h.seed);
            for (const auto& seg : h.segments) {
              if (seg.density == 0.0) continue;
              std::vector<double> levels;
              for (double rho : radii) levels.push_back(1.0 / (ac * rho));
              auto breaks = segmentCrossings(seg, levels);
              acc += quad::integrate(
                         [&](double t) {
                           return seg.density * wIntegralAt(*h.seed, alpha, c * seg.h(t));
                         },
                         seg.t0, seg.t1, breaks)
                         .value;
            }
            return acc;
          },
      },
      m.node());
}

// --- integrability and log moments ----------------------------------------------

double momentScaled(const LevyMeasure& m, double c) {
  const double ac = std::abs(c);
  if (ac == 0.0) return 0.0;
  return std::visit(
      Overload{
          [&](const LevyMeasure::Discrete& d) {
            double acc = 0.0;
            for (const auto& a : d.atoms) {
              const double v = ac * std::abs(a.x);
              acc += a.mass * std::min(1.0, v * v);
            }
            return acc;
          },
          [&](const LevyMeasure::StableMixture& s) {
            double acc = 0.0;
            for (const auto& a : s.atoms)
              acc += a.weight * std::pow(ac, a.z) *
                     (1.0 / (2.0 - a.z) + 1.0 / a.z);
            return acc;
          },
          [&](const LevyMeasure::JTransformed& j) {
            auto breaks = scaledBreaks(atomRadii(*j.seed), 1.0 / ac);
            return quad::tauIntegral(
                       j.alpha,
                       [&](double t) { return momentScaled(*j.seed, ac * t); },
                       breaks)
                .value;
          },
          [&](const LevyMeasure::ITransformed& i) {
            std::vector<double> breaks;
            for (double rho : atomRadii(*i.seed)) {
              const double s = std::log(rho * ac);
              if (s > 0.0) breaks.push_back(s);
            }
            return quad::expHorizonIntegral(
                       [&](double s) {
                         return momentScaled(*i.seed, ac * std::exp(-s));
                       },
                       breaks)
                .value;
          },
          [&](const LevyMeasure::Sum& s) {
            double acc = 0.0;
            for (const auto& t : s.terms) acc += momentScaled(t, c);
            return acc;
          },
          [&](const LevyMeasure::HKernel& h) {
            double acc = 0.0;
            const auto radii = atomRadii(*h.seed);
            for (const auto& seg : h.segments) {
              if (seg.density == 0.0) continue;
              std::vector<double> levels;
              for (double rho : radii) levels.push_back(1.0 / (ac * rho));
              auto breaks = segmentCrossings(seg, levels);
              acc += quad::integrate(
                         [&](double t) {
                           return seg.density * momentScaled(*h.seed, ac * seg.h(t));
                         },
                         seg.t0, seg.t1, breaks)
                         .value;
            }
            return acc;
          },
      },
      m.node());
}

double logMomentScaled(const LevyMeasure& m, double c) {
  const double ac = std::abs(c);
  if (ac == 0.0) return 0.0;
  return std::visit(
      Overload{
          [&](const LevyMeasure::Discrete& d) {
            double acc = 0.0;
            for (const auto& a : d.atoms) {
              const double v = ac * std::abs(a.x);
              if (v > 1.0) acc += a.mass * std::log(v);
            }
            return acc;
          },
          [&](const LevyMeasure::StableMixture& s) {
            double acc = 0.0;
            for (const auto& a : s.atoms)
              acc += a.weight * std::pow(ac, a.z) / (a.z * a.z);
            return acc;
          },
          [&](const LevyMeasure::JTransformed& j) {
            auto breaks = scaledBreaks(atomRadii(*j.seed), 1.0 / ac);
            return quad::tauIntegral(
                       j.alpha,
                       [&](double t) { return logMomentScaled(*j.seed, ac * t); },
                       breaks)
                .value;
          },
          [&](const LevyMeasure::ITransformed& i) {
            std::vector<double> breaks;
            for (double rho : atomRadii(*i.seed)) {
              const double s = std::log(rho * ac);
              if (s > 0.0) breaks.push_back(s);
            }
            return quad::expHorizonIntegral(
                       [&](double s) {
                         return logMomentScaled(*i.seed, ac * std::exp(-s));
                       },
                       breaks)
                .value;
          },
          [&](const LevyMeasure::Sum& s) {
            double acc = 0.0;
            for (const auto& t : s.terms) acc += logMomentScaled(t, c);
            return acc;
          },
          [&](const LevyMeasure::HKernel& h) {
            double acc = 0.0;
            for (const auto& seg : h.segments) {
              if (seg.density == 0.0) continue;
              acc += quad::integrate(
                         [&](double t) {
                           return seg.density * logMomentScaled(*h.seed, ac * seg.h(t));
                         },
                         seg.t0, seg.t1)
                         .value;
            }
            return acc;
          },
      },
      m.node());
}

ValidationReport validateMeasure(const LevyMeasure& m) {
  ValidationReport rep;
  try {
    rep.integrabilityMoment = momentScaled(m, 1.0);
    if (const auto* i = std::get_if<LevyMeasure::ITransformed>(&m.node()))
      rep.seedLogMoment = logMomentAboveOne(*i->seed);
  } catch (const QuadratureError& e) {
    rep.pass = false;
    rep.detail = std::string("NonFinite: ") + e.what();
    rep.integrabilityMoment = std::numeric_limits<double>::infinity();
    return rep;
  }
  const bool momentOk = std::isfinite(rep.integrabilityMoment);
  const bool logOk = !rep.seedLogMoment || std::isfinite(*rep.seedLogMoment);
  rep.pass = momentOk && logOk;
  if (!momentOk) rep.detail = "NonFinite: integrability moment diverges";
  if (!logOk) rep.detail = "NonFinite: seed log-moment diverges";
  return rep;
}

// --- jump exponent --------------------------------------------------------------

std::complex<double> exponentJump(const LevyMeasure& m, double y) {
  if (y == 0.0) return {0.0, 0.0};
  using C = std::complex<double>;
  return std::visit(
      Overload{
          [&](const LevyMeasure::Discrete& d) {
            C acc{};
            for (const auto& a : d.atoms) {
              const double arg = y * a.x;
              acc += a.mass * (std::abs(a.x) <= 1.0 ? expm1iCompensated(arg)
                                                    : expm1i(arg));
            }
            return acc;
          },
          [&](const LevyMeasure::StableMixture& s) {
            C acc{};
            for (const auto& a : s.atoms)
              acc += a.weight * stableKernel(a.z, y * a.direction);
            return acc;
          },
          [&](const LevyMeasure::JTransformed& j) {
            auto breaks = scaledBreaks(atomRadii(*j.seed), 1.0);
            return quad::tauIntegral(
                       j.alpha,
                       [&](double t) {
                         return exponentJump(*j.seed, t * y) -
                                C(0.0, t * y * truncatedMean(*j.seed, 1.0 / t));
                       },
                       breaks)
                .value;
          },
          [&](const LevyMeasure::ITransformed& i) {
            std::vector<double> breaks;
            for (double rho : atomRadii(*i.seed)) {
              const double s = std::log(rho);
              if (s > 0.0) breaks.push_back(s);
            }
            return quad::expHorizonIntegral(
                       [&](double s) {
                         const double e = std::exp(-s);
                         return exponentJump(*i.seed, e * y) -
                                C(0.0, e * y * truncatedMean(*i.seed, 1.0 / e));
                       },
                       breaks)
                .value;
          },
          [&](const LevyMeasure::Sum& s) {
            C acc{};
            for (const auto& t : s.terms) acc += exponentJump(t, y);
            return acc;
          },
          [&](const LevyMeasure::HKernel& h) {
            C acc{};
            const auto radii = atomRadii(*h.seed);
            for (const auto& seg : h.segments) {
              if (seg.density == 0.0) continue;
              std::vector<double> levels;
              for (double rho : radii) levels.push_back(1.0 / rho);
              auto breaks = segmentCrossings(seg, levels);
              acc += quad::integrate(
                         [&](double t) -> C {
                           const double ht = seg.h(t);
                           if (ht == 0.0) return C{};
                           return seg.density *
                                  (exponentJump(*h.seed, ht * y) -
                                   C(0.0, ht * y *
                                              truncatedMean(*h.seed,
                                                            1.0 / std::abs(ht))));
                         },
                         seg.t0, seg.t1, breaks)
                         .value;
            }
            return acc;
          },
      },
      m.node());
}

// --- structure ------------------------------------------------------------------

LevyMeasure dilateMeasure(const LevyMeasure& m, double d) {
  if (d == 0.0 || !std::isfinite(d))
    throw std::invalid_argument("dilation factor must be finite and nonzero");
  return std::visit(
      Overload{
          [&](const LevyMeasure::Discrete& dd) {
            auto atoms = dd.atoms;
            for (auto& a : atoms) a.x *= d;
            return LevyMeasure::discrete(std::move(atoms));
          },
          [&](const LevyMeasure::StableMixture& s) {
            auto atoms = s.atoms;
            for (auto& a : atoms) {
              a.weight *= std::pow(std::abs(d), a.z);
              if (d < 0.0) a.direction = -a.direction;
            }
            return LevyMeasure::stableMixture(std::move(atoms));
          },
          [&](const LevyMeasure::JTransformed& j) {
            return LevyMeasure::jTransformed(dilateMeasure(*j.seed, d), j.alpha);
          },
          [&](const LevyMeasure::ITransformed& i) {
            return LevyMeasure::iTransformed(dilateMeasure(*i.seed, d));
          },
          [&](const LevyMeasure::Sum& s) {
            std::vector<LevyMeasure> terms;
            terms.reserve(s.terms.size());
            for (const auto& t : s.terms) terms.push_back(dilateMeasure(t, d));
            return LevyMeasure::sum(std::move(terms));
          },
          [&](const LevyMeasure::HKernel& h) {
            auto segs = h.segments;
            return LevyMeasure::hKernel(dilateMeasure(*h.seed, d), std::move(segs));
          },
      },
      m.node());
}

LevyMeasure scaleMass(const LevyMeasure& m, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("mass scale must be positive");
  return std::visit(
      Overload{
          [&](const LevyMeasure::Discrete& d) {
            auto atoms = d.atoms;
            for (auto& a : atoms) a.mass *= s;
            return LevyMeasure::discrete(std::move(atoms));
          },
          [&](const LevyMeasure::StableMixture& mix) {
            auto atoms = mix.atoms;
            for (auto& a : atoms) a.weight *= s;
            return LevyMeasure::stableMixture(std::move(atoms));
          },
          [&](const LevyMeasure::JTransformed& j) {
            return LevyMeasure::jTransformed(scaleMass(*j.seed, s), j.alpha);
          },
          [&](const LevyMeasure::ITransformed& i) {
            return LevyMeasure::iTransformed(scaleMass(*i.seed, s));
          },
          [&](const LevyMeasure::Sum& sm) {
            std::vector<LevyMeasure> terms;
            terms.reserve(sm.terms.size());
            for (const auto& t : sm.terms) terms.push_back(scaleMass(t, s));
            return LevyMeasure::sum(std::move(terms));
          },
          [&](const LevyMeasure::HKernel& h) {
            auto segs = h.segments;
            return LevyMeasure::hKernel(scaleMass(*h.seed, s), std::move(segs));
          },
      },
      m.node());
}

std::vector<double> atomRadii(const LevyMeasure& m) {
  std::vector<double> out = std::visit(
      Overload{
          [&](const LevyMeasure::Discrete& d) {
            std::vector<double> r;
            for (const auto& a : d.atoms) r.push_back(std::abs(a.x));
            return r;
          },
          [&](const LevyMeasure::StableMixture&) { return std::vector<double>{}; },
          [&](const LevyMeasure::JTransformed& j) { return atomRadii(*j.seed); },
          [&](const LevyMeasure::ITransformed& i) { return atomRadii(*i.seed); },
          [&](const LevyMeasure::Sum& s) {
            std::vector<double> r;
            for (const auto& t : s.terms) {
              auto sub = atomRadii(t);
              r.insert(r.end(), sub.begin(), sub.end());
            }
            return r;
          },
          [&](const LevyMeasure::HKernel&) { return std::vector<double>{}; },
      },
      m.node());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double radialScale(const LevyMeasure& m) {
  return std::visit(
      Overload{
          [&](const LevyMeasure::Discrete& d) {
            double r = 0.0;
            for (const auto& a : d.atoms) r = std::max(r, std::abs(a.x));
            return r;
          },
          [&](const LevyMeasure::StableMixture& s) {
            return s.atoms.empty() ? 0.0 : 1.0;
          },
          [&](const LevyMeasure::JTransformed& j) { return radialScale(*j.seed); },
          [&](const LevyMeasure::ITransformed& i) { return radialScale(*i.seed); },
          [&](const LevyMeasure::Sum& s) {
            double r = 0.0;
            for (const auto& t : s.terms) r = std::max(r, radialScale(t));
            return r;
          },
          [&](const LevyMeasure::HKernel& h) {
            double maxH = 0.0;
            for (const auto& seg : h.segments)
              maxH = std::max({maxH, std::abs(seg.h(seg.t0)), std::abs(seg.h(seg.t1))});
            return maxH * radialScale(*h.seed);
          },
      },
      m.node());
}

SpectralFunction spectralFunction(const LevyMeasure& m) {
  auto rep = validateMeasure(m);
  if (!rep.pass) throw ValidationError("spectral function of an invalid measure: " + rep.detail);
  SpectralFunction f;
  f.flaggedRadii = atomRadii(m);
  f.value = [m](int direction, double r) { return tailFunction(m, direction, r); };
  return f;
}

// --- triples --------------------------------------------------------------------

LevyTriple makeTriple(double shift, double gaussVar, LevyMeasure m) {
  if (!std::isfinite(shift)) throw ValidationError("shift must be finite");
  if (!(gaussVar >= 0.0)) throw ValidationError("Gaussian variance must be nonnegative");
  return LevyTriple{shift, gaussVar, std::move(m)};
}

namespace {

LevyMeasure addMeasures(const LevyMeasure& a, const LevyMeasure& b) {
  if (a.isZero()) return b;
  if (b.isZero()) return a;
  const auto* da = std::get_if<LevyMeasure::Discrete>(&a.node());
  const auto* db = std::get_if<LevyMeasure::Discrete>(&b.node());
  if (da && db) {
    auto atoms = da->atoms;
    atoms.insert(atoms.end(), db->atoms.begin(), db->atoms.end());
    return LevyMeasure::discrete(std::move(atoms));
  }
  const auto* sa = std::get_if<LevyMeasure::StableMixture>(&a.node());
  const auto* sb = std::get_if<LevyMeasure::StableMixture>(&b.node());
  if (sa && sb) {
    auto atoms = sa->atoms;
    atoms.insert(atoms.end(), sb->atoms.begin(), sb->atoms.end());
    return LevyMeasure::stableMixture(std::move(atoms));
  }
  return LevyMeasure::sum({a, b});
}

}  // namespace

LevyTriple convolve(const LevyTriple& a, const LevyTriple& b) {
  return LevyTriple{a.shift + b.shift, a.gaussVar + b.gaussVar,
                    addMeasures(a.measure, b.measure)};
}

LevyTriple convPower(const LevyTriple& t, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("convolution power must be positive");
  LevyMeasure m = t.measure.isZero() ? t.measure : scaleMass(t.measure, s);
  return LevyTriple{s * t.shift, s * t.gaussVar, std::move(m)};
}

LevyTriple dilate(const LevyTriple& t, double d) {
  if (d == 0.0) throw std::invalid_argument("dilation factor must be nonzero");
  double shift = d * t.shift;
  LevyMeasure m = t.measure;
  if (!t.measure.isZero()) {
    shift += d * truncatedMean(t.measure, 1.0 / std::abs(d));
    m = dilateMeasure(t.measure, d);
  }
  return LevyTriple{shift, d * d * t.gaussVar, std::move(m)};
}

// --- grids and scans --------------------------------------------------------------

RadiusGrid RadiusGrid::geometric(double rMin, double rMax, int pointsPerDecade) {
  if (!(rMin > 0.0) || !(rMax > rMin))
    throw std::invalid_argument("grid bounds must satisfy 0 < rMin < rMax");
  if (pointsPerDecade < 1) throw std::invalid_argument("grid density must be positive");
  RadiusGrid g;
  const double decades = std::log10(rMax / rMin);
  const int n = std::max(2, static_cast<int>(std::ceil(decades * pointsPerDecade)) + 1);
  for (int i = 0; i < n; ++i)
    g.radii.push_back(rMin * std::pow(rMax / rMin, static_cast<double>(i) / (n - 1)));
  return g;
}

SpectralScanReport scanSpectralCandidate(
    const std::function<double(int, double)>& fn, const RadiusGrid& grid,
    const std::vector<double>& flaggedRadii, double scaleHint) {
  SpectralScanReport rep;
  const auto& rs = grid.radii;
  if (rs.size() < 3) throw std::invalid_argument("spectral scan needs at least 3 radii");

  // two-grid-step exemption zone around each flagged radius
  auto isFlagged = [&](std::size_t i) {
    const double stepUp = rs[std::min(i + 2, rs.size() - 1)];
    const double stepDn = rs[i >= 2 ? i - 2 : 0];
    for (double rho : flaggedRadii)
      if (rho >= stepDn && rho <= stepUp) return true;
    return false;
  };

  double scale = scaleHint;
  std::vector<double> vals(rs.size());
  std::vector<bool> keep(rs.size());
  auto noteViolation = [&](double mag, double r, const char* what) {
    if (mag > rep.worstViolation) {
      rep.worstViolation = mag;
      rep.worstRadius = r;
      rep.failedCheck = what;
    }
  };

  for (int dir : {+1, -1}) {
    for (std::size_t i = 0; i < rs.size(); ++i) {
      vals[i] = fn(dir, rs[i]);
      keep[i] = !isFlagged(i);
      scale = std::max(scale, std::abs(vals[i]));
    }
    const double tol = 2e-2 * scale + 1e-9;
    // sign
    for (std::size_t i = 0; i < rs.size(); ++i)
      if (keep[i] && vals[i] > tol) noteViolation(vals[i], rs[i], "sign");
    // monotone over surviving points
    std::size_t prev = rs.size();
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (!keep[i]) continue;
      if (prev != rs.size() && vals[i] < vals[prev] - tol)
        noteViolation(vals[prev] - vals[i], rs[i], "monotonicity");
      prev = i;
    }
    // decay toward the top of the grid
    const double head = std::abs(vals.front());
    const double tail = std::abs(vals.back());
    if (head > tol && tail > 0.5 * head)
      noteViolation(tail, rs.back(), "decay");
  }
  rep.pass = rep.failedCheck.empty();
  return rep;
}

SpectralScanReport cofactorExponentCheck(const LevyTriple& t, double c,
                                         const RadiusGrid& grid) {
  if (!(c > 0.0) || !(c < 1.0))
    throw std::invalid_argument("cofactor scale must lie in (0,1)");
  if (t.measure.isZero()) return SpectralScanReport{};  // trivially valid
  auto flags = atomRadii(t.measure);
  // the dilated copy contributes kinks at c * rho as well
  const auto base = flags;
  for (double rho : base) flags.push_back(c * rho);
  std::sort(flags.begin(), flags.end());
  const LevyMeasure m = t.measure;
  auto fn = [m, c](int dir, double r) {
    return tailFunction(m, dir, r) - c * tailFunction(m, dir, r / c);
  };
  return scanSpectralCandidate(fn, grid, flags);
}

}  // namespace levycalc
