#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <span>
#include <vector>

#include "levycalc/errors.hpp"

// Double-exponential (tanh-sinh) quadrature plus the two weighted integrals
// the measure evaluators lean on: the gamma time-change integral over (0,1)
// and exponential-horizon integrals over (0,inf).
//
// tanh-sinh is used throughout because the integrands routinely carry
// integrable endpoint singularities: (-ln t)^(alpha-1) at t -> 1, u^(alpha-1)
// at u -> 0, and radial densities w^(-z-1) near w -> 0. Node/weight tables
// are interval-independent and cached per refinement level.

namespace levycalc::quad {

struct Options {
  double absTol = 1e-10;
  double relTol = 1e-8;
  int maxLevel = 11;
};

// Default tolerances; LEVYCALC_TOL (a single double) overrides both.
inline const Options& defaults() {
  static const Options opt = [] {
    Options o;
    if (const char* env = std::getenv("LEVYCALC_TOL")) {
      char* end = nullptr;
      const double tol = std::strtod(env, &end);
      if (end != env && tol > 0 && tol < 1) {
        o.absTol = tol;
        o.relTol = tol;
      }
    }
    return o;
  }();
  return opt;
}

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  bool converged = true;
};

namespace detail {

struct Node {
  double deltaFrac;  // distance to the interval endpoint, as a fraction of b-a
  double weight;     // quadrature weight per unit half-length
};

// Nodes of refinement level k (spacing h = 2^-k): level 0 holds u = 0, 1, 2, ...;
// level k>0 holds the odd multiples of 2^-k.
const std::vector<Node>& levelNodes(int level);
double centerWeight();  // weight of the u = 0 node at unit spacing

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

}  // namespace detail

// Integral of f over (a, b). Endpoint singularities are fine as long as they
// are integrable; f is never evaluated exactly at a or b.
template <class F>
auto tanhSinh(F&& f, double a, double b, const Options& opt = defaults())
    -> Result<decltype(f(0.5 * (a + b)))> {
  using T = decltype(f(0.5 * (a + b)));
  Result<T> res;
  if (!(b > a)) return res;
  const double halfLen = 0.5 * (b - a);

  auto evalPair = [&](const detail::Node& n) -> T {
    const double delta = (b - a) * n.deltaFrac;
    if (delta <= 0.0) return T{};
    T sum = f(a + delta);
    if (n.deltaFrac < 0.5) sum += f(b - delta);
    return sum * n.weight;
  };

  double h = 1.0;
  T acc = detail::centerWeight() * f(a + halfLen);
  for (const auto& n : detail::levelNodes(0)) acc += evalPair(n);
  T integral = acc * (h * halfLen);
  double prevErr = std::numeric_limits<double>::infinity();

  for (int level = 1; level <= opt.maxLevel; ++level) {
    h *= 0.5;
    T fresh{};
    for (const auto& n : detail::levelNodes(level)) fresh += evalPair(n);
    const T refined = integral * 0.5 + fresh * (h * halfLen);
    const double err = detail::magnitude(refined - integral);
    integral = refined;
    const double goal =
        std::max(opt.absTol, opt.relTol * detail::magnitude(integral));
    if (err <= goal && prevErr <= 10 * goal) {
      res.value = integral;
      res.error = err;
      return res;
    }
    prevErr = err;
  }
  res.value = integral;
  res.error = prevErr;
  res.converged = false;
  return res;
}

namespace detail {

// Splits (a,b) at the supplied interior breakpoints, integrates each piece.
template <class F>
auto pieced(F&& f, double a, double b, std::span<const double> breaks,
            const Options& opt) -> Result<decltype(f(0.5 * (a + b)))> {
  using T = decltype(f(0.5 * (a + b)));
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double c : breaks)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  Result<T> total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    auto piece = tanhSinh(f, cuts[i], cuts[i + 1], opt);
    total.value += piece.value;
    total.error += piece.error;
    total.converged = total.converged && piece.converged;
  }
  return total;
}

}  // namespace detail

// Integral over (a,b) with known interior kink locations. Throws when the
// error estimate is hopeless relative to the requested tolerance.
template <class F>
auto integrate(F&& f, double a, double b, std::span<const double> breaks = {},
               const Options& opt = defaults())
    -> Result<decltype(f(0.5 * (a + b)))> {
  auto res = detail::pieced(f, a, b, breaks, opt);
  const double goal =
      std::max(opt.absTol, opt.relTol * detail::magnitude(res.value));
  if (!res.converged && res.error > 1e3 * goal)
    throw QuadratureError("quadrature failed to converge", res.error);
  return res;
}

// Integral of f(t) against the time-change measure with density
// (-ln t)^(alpha-1) / Gamma(alpha) on (0,1), computed in the u = -ln t
// variable where the weight becomes the gamma density u^(alpha-1) e^-u.
// tBreaks lists t-values where f has kinks or jumps.
template <class F>
auto tauIntegral(double alpha, F&& f, std::span<const double> tBreaks = {},
                 const Options& opt = defaults())
    -> Result<decltype(f(0.5))> {
  using T = decltype(f(0.5));
  const double logGamma = std::lgamma(alpha);
  auto g = [&](double u) -> T {
    const double w = std::exp((alpha - 1.0) * std::log(u) - u - logGamma);
    return f(std::exp(-u)) * w;
  };
  std::vector<double> uBreaks;
  double uMax = 45.0 + 8.0 * alpha;
  for (double t : tBreaks) {
    if (t > 0.0 && t < 1.0) {
      const double u = -std::log(t);
      uBreaks.push_back(u);
      uMax = std::max(uMax, u + 45.0);
    }
  }
  std::sort(uBreaks.begin(), uBreaks.end());
  auto res = detail::pieced(g, 0.0, uMax, uBreaks, opt);
  const double goal =
      std::max(opt.absTol, opt.relTol * detail::magnitude(res.value));
  if (!res.converged && res.error > 1e3 * goal)
    throw QuadratureError("time-change quadrature failed to converge",
                          res.error);
  return res;
}

// Integral of f over (0, inf) for integrands with (at least) exponential
// decay: fixed pieces below sMin, then doubling pieces until three in a row
// are negligible. sBreaks lists kink locations.
template <class F>
auto expHorizonIntegral(F&& f, std::span<const double> sBreaks = {},
                        const Options& opt = defaults())
    -> Result<decltype(f(1.0))> {
  using T = decltype(f(1.0));
  std::vector<double> edges{0.0, 1.0, 2.0, 4.0};
  for (double s : sBreaks)
    if (s > 0.0) edges.push_back(s);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Result<T> total;
  double upper = edges.back();
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    auto piece = tanhSinh(f, edges[i], edges[i + 1], opt);
    total.value += piece.value;
    total.error += piece.error;
    total.converged = total.converged && piece.converged;
  }
  int quiet = 0;
  double width = std::max(2.0, upper);
  const int maxPieces = 64;
  for (int k = 0; k < maxPieces && quiet < 3; ++k) {
    auto piece = tanhSinh(f, upper, upper + width, opt);
    total.value += piece.value;
    total.error += piece.error;
    const double mag = detail::magnitude(piece.value);
    if (mag < 0.125 * std::max(opt.absTol,
                               opt.relTol * detail::magnitude(total.value)))
      ++quiet;
    else
      quiet = 0;
    upper += width;
    width *= 2.0;
  }
  if (quiet < 3)
    throw QuadratureError("exponential-horizon integral did not settle",
                          total.error);
  const double goal =
      std::max(opt.absTol, opt.relTol * detail::magnitude(total.value));
  if (!total.converged && total.error > 1e3 * goal)
    throw QuadratureError("exponential-horizon quadrature failed to converge",
                          total.error);
  return total;
}

}  // namespace levycalc::quad
