#include "levycalc/classify.hpp"

#include <cmath>
#include <functional>

#include "levycalc/exponent.hpp"
#include "levycalc/transform.hpp"

namespace levycalc {

namespace {

using RadialFn = std::function<double(int, double)>;

// One inverse-tail application: candidate(r) = f(r) - r f'(r), with the
// derivative by Richardson central differences at relative step hRel.
RadialFn invertOnce(RadialFn f, double hRel) {
  return [f = std::move(f), hRel](int dir, double r) {
    auto g = [&f, dir](double x) { return f(dir, x); };
    const double d1 = (g(r * (1.0 + hRel)) - g(r * (1.0 - hRel))) / (2.0 * r * hRel);
    const double d2 =
        (g(r * (1.0 + 0.5 * hRel)) - g(r * (1.0 - 0.5 * hRel))) / (r * hRel);
    const double deriv = (4.0 * d2 - d1) / 3.0;
    return f(dir, r) - r * deriv;
  };
}

struct StageScan {
  bool pass = true;
  double worstViolation = 0.0;
  std::string failedCheck;
};

// Validity scan of one candidate stage. Monotonicity and sign are checked on
// grid points at least two steps away from any flagged radius; a global
// boundedness check covers the flagged zone too, which is what catches the
// derivative blow-up of a jump (a kink only produces bounded wiggle there).
StageScan scanStage(const RadialFn& fn, const RadiusGrid& grid,
                    const std::vector<double>& flagged) {
  StageScan scan;
  const auto& rs = grid.radii;
  auto note = [&](double mag, const char* what) {
    if (mag > scan.worstViolation) {
      scan.worstViolation = mag;
      scan.failedCheck = what;
    }
  };
  std::vector<double> vals(rs.size());
  std::vector<bool> keep(rs.size());
  for (int dir : {+1, -1}) {
    double scale = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      vals[i] = fn(dir, rs[i]);
      const double lo = rs[i >= 2 ? i - 2 : 0];
      const double hi = rs[std::min(i + 2, rs.size() - 1)];
      keep[i] = true;
      for (double rho : flagged)
        if (rho >= lo && rho <= hi) keep[i] = false;
      if (keep[i]) scale = std::max(scale, std::abs(vals[i]));
    }
    const double tol = 2e-2 * scale + 1e-9;
    const double bound = 2.5 * scale + 1e-6;
    std::size_t prev = rs.size();
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (std::abs(vals[i]) > bound) note(std::abs(vals[i]) - bound, "bounded");
      if (!keep[i]) continue;
      if (vals[i] > tol) note(vals[i], "sign");
      if (prev != rs.size() && vals[i] < vals[prev] - tol)
        note(vals[prev] - vals[i], "monotonicity");
      prev = i;
    }
    // decay: the tail of a spectral candidate must head toward zero
    std::size_t last = rs.size();
    for (std::size_t i = rs.size(); i-- > 0;)
      if (keep[i]) {
        last = i;
        break;
      }
    if (last != rs.size() && scale > 1e-9 && std::abs(vals[last]) > 0.5 * scale)
      note(std::abs(vals[last]), "decay");
  }
  scan.pass = scan.failedCheck.empty();
  return scan;
}

bool mixtureRepresentable(const LevyMeasure& m, double& momentCondition) {
  if (m.isZero()) return true;
  if (const auto* s = std::get_if<LevyMeasure::StableMixture>(&m.node())) {
    for (const auto& a : s->atoms) momentCondition += a.weight / (2.0 - a.z);
    return true;
  }
  if (const auto* j = std::get_if<LevyMeasure::JTransformed>(&m.node()))
    return mixtureRepresentable(*j->seed, momentCondition);
  if (const auto* i = std::get_if<LevyMeasure::ITransformed>(&m.node()))
    return mixtureRepresentable(*i->seed, momentCondition);
  if (const auto* s = std::get_if<LevyMeasure::Sum>(&m.node())) {
    bool all = true;
    for (const auto& t : s->terms) all = all && mixtureRepresentable(t, momentCondition);
    return all;
  }
  return false;
}

}  // namespace

RadiusGrid defaultClassifierGrid(const LevyMeasure& m, int pointsPerDecade) {
  double scale = radialScale(m);
  if (!(scale > 0.0)) scale = 1.0;
  return RadiusGrid::geometric(0.05 * scale, 4.0 * scale, pointsPerDecade);
}

ClassReport classifyOrder(const LevyTriple& t, int maxOrder, const RadiusGrid& grid) {
  if (maxOrder < 1 || maxOrder > kMaxClassifierOrder)
    throw std::invalid_argument("classifier order must lie in [1,6]");
  ClassReport report;

  if (t.measure.isZero()) {
    // no jump part: vacuously valid at every order
    report.maxVerifiedOrder = maxOrder;
    for (int k = 1; k <= maxOrder; ++k)
      report.perOrder.push_back(OrderDiagnostics{k, true, 0.0, "", {}});
    return report;
  }

  SpectralFunction L = spectralFunction(t.measure);
  const auto flagged = L.flaggedRadii;
  // keep the nested stencil reach inside the two-grid-step flag exclusion
  const double hRel =
      flagged.empty() ? 1e-2 : std::min(1e-2, 2.1e-2 / maxOrder);

  RadialFn stage = L.value;
  for (int k = 1; k <= maxOrder; ++k) {
    stage = invertOnce(std::move(stage), hRel);
    auto scan = scanStage(stage, grid, flagged);
    report.perOrder.push_back(OrderDiagnostics{k, scan.pass, scan.worstViolation,
                                               scan.failedCheck, flagged});
    if (!scan.pass) break;
    report.maxVerifiedOrder = k;
  }
  return report;
}

ClassReport classifyCompletelyS(const LevyMeasure& m, int cap) {
  ClassReport report;
  double moment = 0.0;
  if (mixtureRepresentable(m, moment)) {
    report.completelyS = TriState::Yes;
    report.mixtureMomentCondition = moment;
    report.maxVerifiedOrder = cap;
    return report;
  }
  report = classifyOrder(LevyTriple{0.0, 0.0, m}, cap, defaultClassifierGrid(m));
  report.completelyS =
      report.maxVerifiedOrder < cap ? TriState::No : TriState::Unknown;
  return report;
}

std::vector<InclusionCheck> inclusionChainCheck(const std::vector<LevyTriple>& seeds,
                                                int m) {
  if (m < 1 || m + 1 > kMaxClassifierOrder)
    throw std::invalid_argument("inclusion order out of the classifier range");
  std::vector<InclusionCheck> checks;
  int index = 0;
  for (const auto& seed : seeds) {
    const std::string tag = "seed" + std::to_string(index++);
    {
      LevyTriple image = jAlpha(seed, m + 1);
      auto grid = defaultClassifierGrid(image.measure.isZero() ? seed.measure
                                                               : image.measure);
      auto rep = classifyOrder(image, m + 1, grid);
      checks.push_back(InclusionCheck{tag + ":transform-image-order",
                                      rep.maxVerifiedOrder >= m + 1,
                                      rep.maxVerifiedOrder, m + 1});
    }
    if (!seed.measure.isZero() &&
        std::isfinite(logMomentAboveOne(seed.measure))) {
      LevyTriple image = iTransform(seed);
      auto grid = defaultClassifierGrid(image.measure);
      auto rep = classifyOrder(image, 1, grid);
      checks.push_back(InclusionCheck{tag + ":horizon-image-order",
                                      rep.maxVerifiedOrder >= 1,
                                      rep.maxVerifiedOrder, 1});
    }
  }
  return checks;
}

}  // namespace levycalc
