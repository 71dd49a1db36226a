#include "levycalc/quad.hpp"

#include <mutex>

namespace levycalc::quad::detail {

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kUMax = 6.5;  // abscissa cutoff; weights underflow beyond

// Node at tanh-sinh abscissa u: x = tanh(pi/2 sinh u), expressed as the
// distance 1 - |x| = 2 / (e^{2y} + 1) with y = pi/2 sinh u. deltaFrac is
// that distance halved so callers can scale by (b - a) directly.
Node makeNode(double u) {
  const double y = kHalfPi * std::sinh(u);
  const double em = std::exp(-2.0 * y);  // underflows harmlessly at large u
  const double oneMinusTanh = 2.0 * em / (1.0 + em);
  const double sech2 = 4.0 * em / ((1.0 + em) * (1.0 + em));
  Node n;
  n.deltaFrac = 0.5 * oneMinusTanh;
  n.weight = kHalfPi * std::cosh(u) * sech2;
  return n;
}

struct Tables {
  std::vector<std::vector<Node>> levels;
  double centerWeight = 0.0;
};

const Tables& tables() {
  static Tables t = [] {
    Tables tab;
    tab.centerWeight = kHalfPi;  // u = 0: cosh(0) * sech^2(0) * pi/2
    tab.levels.resize(16);
    // Level 0: u = h, 2h, ... with h = 1.
    for (double u = 1.0; u <= kUMax; u += 1.0) {
      Node n = makeNode(u);
      if (n.deltaFrac <= 0.0 || n.weight <= 0.0) break;
      tab.levels[0].push_back(n);
    }
    for (int level = 1; level < 16; ++level) {
      const double h = std::ldexp(1.0, -level);
      for (double u = h; u <= kUMax; u += 2.0 * h) {
        Node n = makeNode(u);
        if (n.deltaFrac <= 0.0 || n.weight <= 0.0) break;
        tab.levels[level].push_back(n);
      }
    }
    return tab;
  }();
  return t;
}

}  // namespace

const std::vector<Node>& levelNodes(int level) { return tables().levels.at(level); }

double centerWeight() { return tables().centerWeight; }

}  // namespace levycalc::quad::detail
