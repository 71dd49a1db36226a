#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levycalc/measure.hpp"

// Necessary-condition class membership tests. Order k is probed by applying
// the inverse tail operator k times numerically and checking that each stage
// still looks like a spectral tail on a grid. The classifier reports the
// deepest verified order; it never claims exact class boundaries.

namespace levycalc {

enum class TriState { Yes, No, Unknown };

struct OrderDiagnostics {
  int order = 0;
  bool pass = false;
  double worstViolation = 0.0;
  std::string failedCheck;
  std::vector<double> flaggedRadii;
};

struct ClassReport {
  int maxVerifiedOrder = 0;
  std::vector<OrderDiagnostics> perOrder;
  TriState completelyS = TriState::Unknown;
  std::optional<double> mixtureMomentCondition;  // sum of weight/(2-z)
};

// Differentiation depth is capped at 6; each inverse application costs about
// two digits, so deeper orders would be noise at the base accuracy.
inline constexpr int kMaxClassifierOrder = 6;

ClassReport classifyOrder(const LevyTriple& t, int maxOrder, const RadiusGrid& grid);

// Grid spanning the measure's radial scale, suitable for classifyOrder.
RadiusGrid defaultClassifierGrid(const LevyMeasure& m, int pointsPerDecade = 200);

// Membership in the mixture-representable intersection class: structural yes
// for stable mixtures and their transform images, no when the order test
// fails below the cap, unknown otherwise.
ClassReport classifyCompletelyS(const LevyMeasure& m, int cap = kMaxClassifierOrder);

struct InclusionCheck {
  std::string name;
  bool pass = false;
  int observedOrder = 0;
  int requiredOrder = 0;
};

// Constructive inclusion checks: transformed images must pass the order they
// were built with (and everything below); exponential-horizon images of
// log-moment seeds must pass order one.
std::vector<InclusionCheck> inclusionChainCheck(const std::vector<LevyTriple>& seeds,
                                                int m);

}  // namespace levycalc
