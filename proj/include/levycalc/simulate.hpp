#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "levycalc/measure.hpp"
#include "levycalc/transform.hpp"

// Monte Carlo sampling of the time-changed random integral for
// finite-activity seeds. The exact sampler uses the fact that the jump
// locations of the time-changed process, read in the original time variable,
// are i.i.d. copies of the exponentiated-gamma variable, so no path
// discretization is involved. A Riemann-Stieltjes sampler implements the
// integration-by-parts definition directly as a convergence fallback.
//
// Sampling is batched: batch k draws from substream (seed, k), and batches
// are written to disjoint slots, so results are bit-identical at any thread
// count. The OpenMP kernel and the serial reference share the same batch
// loop body.

namespace levycalc {

struct SampleBatch {
  std::vector<double> values;
  LevyTriple seedSpec;
  double alpha = 1.0;
  std::uint64_t rngSeed = 0;
  std::size_t n = 0;
};

struct EmpiricalCF {
  std::vector<double> grid;
  std::vector<std::complex<double>> values;
  std::vector<double> stderrEnvelope;
};

inline constexpr std::size_t kSampleBatchSize = 4096;

// Law of the integral of t dY(tau_alpha(t)) over (0,1); the seed triple must
// carry a discrete (finite-activity) measure or none at all.
SampleBatch sampleIntegralExact(const LevyTriple& seed, double alpha,
                                std::size_t n, std::uint64_t rngSeed);
// Serial reference implementation (identical output, no OpenMP).
SampleBatch sampleIntegralExactSerial(const LevyTriple& seed, double alpha,
                                      std::size_t n, std::uint64_t rngSeed);

// Law of the partial integral of t dY(t) over [c,1) (exact, same batching).
SampleBatch samplePartialIntegralExact(const LevyTriple& seed, double c,
                                       std::size_t n, std::uint64_t rngSeed);

// Riemann-Stieltjes sampler of the integral of h dY(r) over (a,b] on an
// nSteps-point grid, per the integration-by-parts definition.
SampleBatch sampleIntegralRS(const LevyTriple& seed,
                             const TabulatedFunction& h,
                             const TabulatedFunction& r, std::size_t nSteps,
                             std::size_t n, std::uint64_t rngSeed);

// Empirical characteristic function on a frequency grid; values at -y are
// exact conjugates of values at y, and the y = 0 value is exactly one.
EmpiricalCF empiricalCF(const SampleBatch& batch, const std::vector<double>& grid);
EmpiricalCF empiricalCFSerial(const SampleBatch& batch,
                              const std::vector<double>& grid);

}  // namespace levycalc
