#pragma once

#include <functional>
#include <string>
#include <vector>

// Hyperbolic characteristic functions, the characteristic function of their
// background driving law, and numeric adjudication of the two printed
// candidate formulas for the inverted sine-family exponent.

namespace levycalc {

double phiS(double t);  // t / sinh t
double phiC(double t);  // 1 / cosh t

struct ScalarCF {
  std::function<double(double)> value;
  std::function<double(double)> derivative;  // empty: use finite differences
};

// exp(t phi'(t) / phi(t)); derivative by Richardson differences when no
// symbolic derivative is supplied.
double bdlpCF(const ScalarCF& phi, double t);

double psiS(double t);  // exp(1 - t coth t)
double psiC(double t);  // exp(-t tanh t)

// The exponent inverse applied to log psi, numerically.
double dLogPsi(const std::function<double(double)>& psi, double t);

// Closed candidates for the inverted exponents.
double dLogPsiSinePrinted(double t);   // 1 - 2 coth t + t^2 / sinh^2 t
double dLogPsiSineDerived(double t);   // 1 - 2 t coth t + t^2 / sinh^2 t
double dLogPsiCosineClosed(double t);  // -2 t tanh t - t^2 / cosh^2 t

struct HyperbolicVerdict {
  struct Row {
    std::string candidate;
    double maxDeviation = 0.0;
    bool matches = false;
  };
  std::vector<Row> sineCandidates;
  double cosineDeviation = 0.0;
  bool cosineMatches = false;
  std::string conclusion;
};

// Compares the numeric inversion of log psi_S against both candidate
// formulas on a probe grid and reports which one it reproduces.
HyperbolicVerdict hyperbolicVerdict();

}  // namespace levycalc
