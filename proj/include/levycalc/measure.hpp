#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "levycalc/errors.hpp"
#include "levycalc/quad.hpp"

// Levy measures on the real line and the [shift, gaussVar, measure] triples
// they parametrize. A measure is one of:
//   - a finite list of point atoms,
//   - a stable mixture: per direction, radial density sum_j w_j r^(-z_j - 1)
//     with indices z_j strictly inside (0,2),
//   - the image of a seed under the gamma time-change map (lazy),
//   - the image of a seed under the exponential-horizon map (lazy),
//   - a formal sum (keeps convolution total across variants),
//   - the image of a seed under a piecewise-linear kernel h against a
//     time measure dr (lazy; produced by the general transform).
// Lazy variants are evaluated by quadrature against their seed; atoms and
// stable mixtures have closed forms throughout.

namespace levycalc {

struct DiscreteAtom {
  double x;     // nonzero position
  double mass;  // positive
  bool operator==(const DiscreteAtom&) const = default;
};

struct StableAtom {
  int direction;  // +1 or -1
  double z;       // stability index in (0,2)
  double weight;  // positive
  bool operator==(const StableAtom&) const = default;
};

// One piece of a piecewise-linear transform kernel: on [t0,t1] the integrand
// is h(t) = h0 + hSlope*(t-t0) and the time measure has constant density.
struct KernelSegment {
  double t0, t1;
  double h0, hSlope;
  double density;
  double h(double t) const { return h0 + hSlope * (t - t0); }
  bool operator==(const KernelSegment&) const = default;
};

class LevyMeasure {
 public:
  struct Discrete {
    std::vector<DiscreteAtom> atoms;
    bool operator==(const Discrete&) const = default;
  };
  struct StableMixture {
    std::vector<StableAtom> atoms;
    bool operator==(const StableMixture&) const = default;
  };
  struct JTransformed {
    std::shared_ptr<const LevyMeasure> seed;
    double alpha;
  };
  struct ITransformed {
    std::shared_ptr<const LevyMeasure> seed;
  };
  struct Sum {
    std::vector<LevyMeasure> terms;
  };
  struct HKernel {
    std::shared_ptr<const LevyMeasure> seed;
    std::vector<KernelSegment> segments;
  };
  using Variant =
      std::variant<Discrete, StableMixture, JTransformed, ITransformed, Sum, HKernel>;

  LevyMeasure() : node_(std::make_shared<Variant>(Discrete{})) {}

  static LevyMeasure zero() { return LevyMeasure(); }
  static LevyMeasure discrete(std::vector<DiscreteAtom> atoms);
  static LevyMeasure stableMixture(std::vector<StableAtom> atoms);
  static LevyMeasure jTransformed(LevyMeasure seed, double alpha);
  static LevyMeasure iTransformed(LevyMeasure seed);
  static LevyMeasure sum(std::vector<LevyMeasure> terms);
  static LevyMeasure hKernel(LevyMeasure seed, std::vector<KernelSegment> segments);

  const Variant& node() const { return *node_; }
  bool isZero() const;

  bool operator==(const LevyMeasure& other) const;

 private:
  explicit LevyMeasure(Variant v) : node_(std::make_shared<Variant>(std::move(v))) {}
  std::shared_ptr<const Variant> node_;
};

struct ValidationReport {
  bool pass = false;
  double integrabilityMoment = 0.0;  // integral of min(1, x^2) against M
  std::optional<double> seedLogMoment;  // reported for exponential-horizon images
  std::string detail;
};

ValidationReport validateMeasure(const LevyMeasure& m);

// --- scalar functionals -----------------------------------------------------

// Spectral tail L(direction, r) = -M({|x| > r, sign x = direction}).
double tailFunction(const LevyMeasure& m, int direction, double r);

// Signed truncated mean: integral of x over the annulus between radius 1 and
// radius b (negated when b < 1, zero at b = 1).
double truncatedMean(const LevyMeasure& m, double b);

// Shift integral of the gamma time-change transform at signed scale c:
// (1/Gamma(alpha)) * integral of (c x) IncGamma(alpha, 2 ln|c x|) over |c x| > 1.
double wIntegralAt(const LevyMeasure& m, double alpha, double c);
inline double wIntegral(const LevyMeasure& m, double alpha) {
  return wIntegralAt(m, alpha, 1.0);
}

// integral of min(1, (c x)^2) dM
double momentScaled(const LevyMeasure& m, double c);
// integral of ln|c x| over |c x| > 1
double logMomentScaled(const LevyMeasure& m, double c);
inline double logMomentAboveOne(const LevyMeasure& m) {
  return logMomentScaled(m, 1.0);
}

// Jump part of the Levy exponent: integral of
// e^{iyx} - 1 - iyx 1_{|x|<=1} against M.
std::complex<double> exponentJump(const LevyMeasure& m, double y);

// --- structure --------------------------------------------------------------

LevyMeasure dilateMeasure(const LevyMeasure& m, double d);   // image under x -> d x
LevyMeasure scaleMass(const LevyMeasure& m, double s);       // s * M
// Radii where the spectral tail jumps or kinks (atom magnitudes, preserved
// through the lazy transforms). Sorted, deduplicated.
std::vector<double> atomRadii(const LevyMeasure& m);
// Representative outer radial scale, for building grids.
double radialScale(const LevyMeasure& m);

// --- spectral function object ----------------------------------------------

struct SpectralFunction {
  std::function<double(int direction, double r)> value;
  std::vector<double> flaggedRadii;  // kink/jump radii; excluded from smooth checks
};

SpectralFunction spectralFunction(const LevyMeasure& m);

// --- triples and their algebra ----------------------------------------------

struct LevyTriple {
  double shift = 0.0;
  double gaussVar = 0.0;
  LevyMeasure measure = LevyMeasure::zero();
  bool operator==(const LevyTriple&) const = default;
};

LevyTriple makeTriple(double shift, double gaussVar, LevyMeasure m);

LevyTriple convolve(const LevyTriple& a, const LevyTriple& b);
LevyTriple convPower(const LevyTriple& t, double s);
LevyTriple dilate(const LevyTriple& t, double d);

// --- grids and spectral scans -------------------------------------------------

struct RadiusGrid {
  std::vector<double> radii;
  static RadiusGrid geometric(double rMin, double rMax, int pointsPerDecade = 200);
};

struct SpectralScanReport {
  bool pass = true;
  double worstViolation = 0.0;
  double worstRadius = 0.0;
  std::string failedCheck;
};

// Checks that fn is a plausible spectral tail on the grid: nonpositive,
// nondecreasing in r, decaying toward zero at the top of the grid. Radii
// within two grid steps of a flagged radius are exempt from the
// monotonicity comparison.
SpectralScanReport scanSpectralCandidate(
    const std::function<double(int, double)>& fn, const RadiusGrid& grid,
    const std::vector<double>& flaggedRadii, double scaleHint = 0.0);

// Factorization cofactor test: the tail data of the cofactor of mu at scale c,
// L(D, r) - c L(D, r/c), must itself be a valid spectral tail.
SpectralScanReport cofactorExponentCheck(const LevyTriple& t, double c,
                                         const RadiusGrid& grid);

}  // namespace levycalc
