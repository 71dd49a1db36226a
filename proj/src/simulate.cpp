#include "levycalc/simulate.hpp"

#include <cmath>

#include "levycalc/rng.hpp"
#include "levycalc/special.hpp"

namespace levycalc {

namespace {

struct FiniteActivitySeed {
  double drift = 0.0;  // compensator-free drift: shift - sum of mass*x over |x|<=1
  double gaussVar = 0.0;
  std::vector<DiscreteAtom> atoms;
  double totalMass = 0.0;
  std::vector<double> cumulative;  // normalized cumulative masses for selection
};

FiniteActivitySeed decompose(const LevyTriple& seed) {
  FiniteActivitySeed out;
  out.drift = seed.shift;
  out.gaussVar = seed.gaussVar;
  if (!seed.measure.isZero()) {
    const auto* d = std::get_if<LevyMeasure::Discrete>(&seed.measure.node());
    if (!d)
      throw UnsupportedSeedError(
          "UnsupportedSeed: the exact sampler needs a discrete "
          "(finite-activity) measure");
    out.atoms = d->atoms;
    for (const auto& a : out.atoms) {
      if (std::abs(a.x) <= 1.0) out.drift -= a.mass * a.x;
      out.totalMass += a.mass;
    }
    double acc = 0.0;
    for (const auto& a : out.atoms) {
      acc += a.mass / out.totalMass;
      out.cumulative.push_back(acc);
    }
    if (!out.cumulative.empty()) out.cumulative.back() = 1.0;
  }
  return out;
}

std::size_t pickAtom(const FiniteActivitySeed& s, double u) {
  std::size_t i = 0;
  while (i + 1 < s.cumulative.size() && u > s.cumulative[i]) ++i;
  return i;
}

template <class PerSample>
void runBatches(std::vector<double>& values, std::uint64_t rngSeed,
                const PerSample& drawOne, bool parallel) {
  const std::size_t n = values.size();
  const std::size_t batches = (n + kSampleBatchSize - 1) / kSampleBatchSize;
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long b = 0; b < static_cast<long long>(batches); ++b) {
      rng::Stream stream(rngSeed, static_cast<std::uint64_t>(b));
      const std::size_t lo = static_cast<std::size_t>(b) * kSampleBatchSize;
      const std::size_t hi = std::min(n, lo + kSampleBatchSize);
      for (std::size_t i = lo; i < hi; ++i) values[i] = drawOne(stream);
    }
  } else {
    for (std::size_t b = 0; b < batches; ++b) {
      rng::Stream stream(rngSeed, b);
      const std::size_t lo = b * kSampleBatchSize;
      const std::size_t hi = std::min(n, lo + kSampleBatchSize);
      for (std::size_t i = lo; i < hi; ++i) values[i] = drawOne(stream);
    }
  }
}

SampleBatch exactImpl(const LevyTriple& seed, double alpha, std::size_t n,
                      std::uint64_t rngSeed, bool parallel) {
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("transform order must be positive");
  const FiniteActivitySeed s = decompose(seed);
  const double det = s.drift * gMoment(alpha, 1.0);  // drift * E[t]
  const double sigma = std::sqrt(s.gaussVar * gMoment(alpha, 2.0));

  SampleBatch batch;
  batch.seedSpec = seed;
  batch.alpha = alpha;
  batch.rngSeed = rngSeed;
  batch.n = n;
  batch.values.resize(n);

  auto drawOne = [&](rng::Stream& stream) {
    double x = det;
    if (sigma > 0.0) x += sigma * stream.normal();
    if (s.totalMass > 0.0) {
      const long jumps = stream.poisson(s.totalMass);
      for (long j = 0; j < jumps; ++j) {
        const std::size_t k = pickAtom(s, stream.u01());
        const double g = std::exp(-stream.gamma(alpha));
        x += g * s.atoms[k].x;
      }
    }
    return x;
  };
  runBatches(batch.values, rngSeed, drawOne, parallel);
  return batch;
}

}  // namespace

SampleBatch sampleIntegralExact(const LevyTriple& seed, double alpha,
                                std::size_t n, std::uint64_t rngSeed) {
  return exactImpl(seed, alpha, n, rngSeed, true);
}

SampleBatch sampleIntegralExactSerial(const LevyTriple& seed, double alpha,
                                      std::size_t n, std::uint64_t rngSeed) {
  return exactImpl(seed, alpha, n, rngSeed, false);
}

SampleBatch samplePartialIntegralExact(const LevyTriple& seed, double c,
                                       std::size_t n, std::uint64_t rngSeed) {
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  if (!(c > 0.0) || !(c < 1.0))
    throw std::invalid_argument("partial-integral cutoff must lie in (0,1)");
  const FiniteActivitySeed s = decompose(seed);
  const double det = s.drift * 0.5 * (1.0 - c * c);
  const double sigma = std::sqrt(s.gaussVar * (1.0 - c * c * c) / 3.0);
  const double jumpMass = s.totalMass * (1.0 - c);

  SampleBatch batch;
  batch.seedSpec = seed;
  batch.alpha = 1.0;
  batch.rngSeed = rngSeed;
  batch.n = n;
  batch.values.resize(n);

  auto drawOne = [&](rng::Stream& stream) {
    double x = det;
    if (sigma > 0.0) x += sigma * stream.normal();
    if (jumpMass > 0.0) {
      const long jumps = stream.poisson(jumpMass);
      for (long j = 0; j < jumps; ++j) {
        const std::size_t k = pickAtom(s, stream.u01());
        const double t = c + (1.0 - c) * stream.u01();
        x += t * s.atoms[k].x;
      }
    }
    return x;
  };
  runBatches(batch.values, rngSeed, drawOne, true);
  return batch;
}

SampleBatch sampleIntegralRS(const LevyTriple& seed, const TabulatedFunction& h,
                             const TabulatedFunction& r, std::size_t nSteps,
                             std::size_t n, std::uint64_t rngSeed) {
  if (nSteps < 10) throw std::invalid_argument("the path grid needs at least 10 steps");
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  h.validate(false);
  r.validate(true);
  const FiniteActivitySeed s = decompose(seed);

  const double a = r.t.front(), b = r.t.back();
  std::vector<double> tGrid(nSteps + 1), hGrid(nSteps + 1), sGrid(nSteps + 1);
  for (std::size_t k = 0; k <= nSteps; ++k) {
    tGrid[k] = a + (b - a) * static_cast<double>(k) / nSteps;
    hGrid[k] = h(tGrid[k]);
    sGrid[k] = r(tGrid[k]);
  }

  SampleBatch batch;
  batch.seedSpec = seed;
  batch.alpha = 0.0;
  batch.rngSeed = rngSeed;
  batch.n = n;
  batch.values.resize(n);

  auto drawOne = [&](rng::Stream& stream) {
    // simulate Y at the r-times, one increment per grid cell
    double y = 0.0;
    double prevS = 0.0;
    std::vector<double> path(nSteps + 1);
    for (std::size_t k = 0; k <= nSteps; ++k) {
      const double ds = sGrid[k] - prevS;
      prevS = sGrid[k];
      if (ds > 0.0) {
        y += s.drift * ds;
        if (s.gaussVar > 0.0) y += std::sqrt(s.gaussVar * ds) * stream.normal();
        if (s.totalMass > 0.0) {
          const long jumps = stream.poisson(s.totalMass * ds);
          for (long j = 0; j < jumps; ++j)
            y += s.atoms[pickAtom(s, stream.u01())].x;
        }
      }
      path[k] = y;
    }
    // h(b) Y(r(b)) - h(a) Y(r(a)) - sum of Y(r(t_k)) dh(t_k)
    double x = hGrid[nSteps] * path[nSteps] - hGrid[0] * path[0];
    for (std::size_t k = 0; k < nSteps; ++k)
      x -= path[k] * (hGrid[k + 1] - hGrid[k]);
    return x;
  };
  runBatches(batch.values, rngSeed, drawOne, true);
  return batch;
}

namespace {

EmpiricalCF cfImpl(const SampleBatch& batch, const std::vector<double>& grid,
                   bool parallel) {
  if (batch.values.empty()) throw std::invalid_argument("empty sample batch");
  EmpiricalCF out;
  out.grid = grid;
  out.values.resize(grid.size());
  out.stderrEnvelope.resize(grid.size());
  const auto& v = batch.values;
  const double n = static_cast<double>(v.size());

  auto evalPoint = [&](std::size_t j) {
    const double y = grid[j];
    const double ay = std::abs(y);
    double re = 0.0, im = 0.0;
    for (double x : v) {
      re += std::cos(ay * x);
      im += std::sin(ay * x);
    }
    std::complex<double> phi(re / n, im / n);
    if (y < 0.0) phi = std::conj(phi);
    out.values[j] = phi;
    out.stderrEnvelope[j] =
        std::sqrt(std::max(0.0, 1.0 - std::norm(phi)) / n);
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long j = 0; j < static_cast<long long>(grid.size()); ++j)
      evalPoint(static_cast<std::size_t>(j));
  } else {
    for (std::size_t j = 0; j < grid.size(); ++j) evalPoint(j);
  }
  return out;
}

}  // namespace

EmpiricalCF empiricalCF(const SampleBatch& batch, const std::vector<double>& grid) {
  return cfImpl(batch, grid, true);
}

EmpiricalCF empiricalCFSerial(const SampleBatch& batch,
                              const std::vector<double>& grid) {
  return cfImpl(batch, grid, false);
}

}  // namespace levycalc
