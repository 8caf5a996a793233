#include "rap/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rap {

namespace rng {

namespace {
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::uint32_t c[4], const std::uint32_t k[2]) {
  std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  std::uint32_t out0 = hi1 ^ c[1] ^ k[0];
  std::uint32_t out2 = hi0 ^ c[3] ^ k[1];
  c[0] = out0;
  c[1] = lo1;
  c[2] = out2;
  c[3] = lo0;
}
}  // namespace

void Philox4x32::block(std::uint64_t ctr_lo, std::uint64_t ctr_hi,
                       std::uint32_t out[4]) const {
  std::uint32_t c[4] = {static_cast<std::uint32_t>(ctr_lo),
                        static_cast<std::uint32_t>(ctr_lo >> 32),
                        static_cast<std::uint32_t>(ctr_hi),
                        static_cast<std::uint32_t>(ctr_hi >> 32)};
  std::uint32_t k[2] = {key[0], key[1]};
  for (int r = 0; r < 10; ++r) {
    round_once(c, k);
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  out[0] = c[0];
  out[1] = c[1];
  out[2] = c[2];
  out[3] = c[3];
}

double uniform(std::uint64_t seed, std::uint64_t sample, std::uint32_t draw) {
  Philox4x32 gen(seed);
  std::uint32_t out[4];
  // Four lanes per block; lane = draw % 4, block index = draw / 4.
  gen.block(sample, static_cast<std::uint64_t>(draw / 4), out);
  return (out[draw % 4] + 0.5) * 0x1.0p-32;
}

}  // namespace rng

namespace {

struct SampleContext {
  const std::vector<PortfolioSlice>& slices;
  const AvailabilityModel& model;
  double target;
  std::uint64_t seed;
  std::vector<int> source_index;       // per slice, index into shock list
  std::vector<double> shock_prob;      // per distinct source
  std::vector<double> idio_prob;       // per slice

  SampleContext(const std::vector<PortfolioSlice>& s, const AvailabilityModel& m,
                double t, std::uint64_t sd)
      : slices(s), model(m), target(t), seed(sd) {
    if (model.kind != AvailabilityKind::CommonSource) return;
    std::vector<std::string> names;
    idio_prob.resize(slices.size());
    source_index.resize(slices.size());
    for (std::size_t i = 0; i < slices.size(); ++i) {
      auto it = model.source_shock.find(slices[i].source);
      double shock = it == model.source_shock.end() ? 1.0 : it->second;
      if (!(shock > 0.0) || shock > 1.0) {
        throw std::invalid_argument("source shock probabilities must lie in (0,1]");
      }
      if (slices[i].reliability > shock + 1e-12) {
        throw std::invalid_argument(
            "offer reliability exceeds its source shock probability; the "
            "common-source model cannot reproduce the marginal");
      }
      auto pos = std::find(names.begin(), names.end(), slices[i].source);
      if (pos == names.end()) {
        source_index[i] = static_cast<int>(names.size());
        names.push_back(slices[i].source);
        shock_prob.push_back(shock);
      } else {
        source_index[i] = static_cast<int>(pos - names.begin());
      }
      idio_prob[i] = slices[i].reliability / shock;
    }
  }

  bool success(std::uint64_t sample) const {
    const std::uint32_t n = static_cast<std::uint32_t>(slices.size());
    double delivered = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      double u = rng::uniform(seed, sample, i);
      bool available;
      if (model.kind == AvailabilityKind::CommonSource) {
        bool shock_ok =
            rng::uniform(seed, sample, n + source_index[i]) <
            shock_prob[source_index[i]];
        available = shock_ok && u < idio_prob[i];
      } else {
        available = u < slices[i].reliability;
      }
      if (available) delivered += slices[i].volume_mw;
    }
    return delivered >= target - 1e-9;
  }
};

long long count_range(const SampleContext& ctx, long long lo, long long hi) {
  long long hits = 0;
  for (long long s = lo; s < hi; ++s) {
    hits += ctx.success(static_cast<std::uint64_t>(s));
  }
  return hits;
}

McEstimate finish(long long samples, long long hits) {
  McEstimate est;
  est.samples = samples;
  est.successes = hits;
  est.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  double var = est.estimate * (1.0 - est.estimate) / static_cast<double>(samples);
  est.halfwidth95 = 1.959963984540054 * std::sqrt(std::max(var, 0.0));
  return est;
}

}  // namespace

McEstimate monte_carlo_serial(const std::vector<PortfolioSlice>& slices,
                              const AvailabilityModel& model,
                              double target_volume, long long samples,
                              std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  SampleContext ctx(slices, model, target_volume, seed);
  return finish(samples, count_range(ctx, 0, samples));
}

McEstimate monte_carlo(const std::vector<PortfolioSlice>& slices,
                       const AvailabilityModel& model, double target_volume,
                       long long samples, std::uint64_t seed, int workers) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
#ifdef _OPENMP
  if (workers <= 0) workers = omp_get_max_threads();
#else
  workers = 1;
#endif
  if (workers == 1) {
    return monte_carlo_serial(slices, model, target_volume, samples, seed);
  }
  SampleContext ctx(slices, model, target_volume, seed);
  long long hits = 0;
#ifdef _OPENMP
#pragma omp parallel for num_threads(workers) reduction(+ : hits) \
    schedule(static)
#endif
  for (long long chunk = 0; chunk < workers; ++chunk) {
    long long lo = samples * chunk / workers;
    long long hi = samples * (chunk + 1) / workers;
    hits += count_range(ctx, lo, hi);
  }
  return finish(samples, hits);
}

}  // namespace rap
