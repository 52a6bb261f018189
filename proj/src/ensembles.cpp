#include "qdeph/ensembles.hpp"

#include <cmath>
#include <stdexcept>

#include "qdeph/parallel.hpp"
#include "qdeph/pt.hpp"
#include "qdeph/rng.hpp"

namespace qdeph {

EnsembleRecord sample_record(int n, uint64_t master_seed, int64_t index) {
  uint64_t seed = derive_seed(master_seed, static_cast<uint64_t>(index));
  DephasingModel m = sample_ginibre(n, seed);
  Bipartition first = Bipartition::make(n, {0});
  EnsembleRecord rec;
  rec.sample_index = index;
  rec.seed = seed;
  rec.lambda_min = witness(m, first);
  rec.rel_imag_norm = rel_imag_norm(m);
  rec.rank_proxy = rank_proxy(m);
  rec.entangling = rec.lambda_min < -entangling_threshold(m.C);
  return rec;
}

Fig2Result fig2_scan(const ScanConfig& config) {
  if (config.n != 3) throw std::invalid_argument("fig2_scan expects n = 3");
  if (config.n_samples < 1) throw std::invalid_argument("need samples >= 1");
  if (!(config.bin_width > 0 && config.bin_width <= 1))
    throw std::invalid_argument("bin width must be in (0, 1]");

  Fig2Result out;
  out.records.resize(config.n_samples);
  parallel_for(config.n_samples, config.n_threads, [&](int64_t i) {
    out.records[i] = sample_record(config.n, config.master_seed, i);
  });

  int n_bins = static_cast<int>(std::ceil(1.0 / config.bin_width));
  out.bins.resize(n_bins);
  for (int b = 0; b < n_bins; ++b) out.bins[b].lo = b * config.bin_width;
  for (const EnsembleRecord& rec : out.records) {
    int b = std::min(n_bins - 1,
                     static_cast<int>(rec.rel_imag_norm / config.bin_width));
    out.bins[b].total++;
    if (rec.entangling) out.bins[b].entangling++;
  }
  for (Fig2Bin& bin : out.bins)
    bin.fraction = bin.total ? double(bin.entangling) / double(bin.total) : 0.0;
  return out;
}

std::vector<std::pair<double, double>> fig3_scan(const ScanConfig& config) {
  if (config.n < 2) throw std::invalid_argument("need n >= 2");
  if (config.n_samples < 1) throw std::invalid_argument("need samples >= 1");
  std::vector<std::pair<double, double>> out(config.n_samples);
  parallel_for(config.n_samples, config.n_threads, [&](int64_t i) {
    EnsembleRecord rec = sample_record(config.n, config.master_seed, i);
    out[i] = {rec.rank_proxy, rec.lambda_min};
  });
  return out;
}

std::vector<FractionPoint> fraction_vs_n(int n_min, int n_max,
                                         int64_t n_samples, uint64_t seed,
                                         int n_threads) {
  if (n_min < 3 || n_max > 50 || n_min > n_max)
    throw std::invalid_argument("n range must lie within [3, 50]");
  std::vector<FractionPoint> out;
  for (int n = n_min; n <= n_max; ++n) {
    // distinct master seed per system size
    uint64_t n_seed = derive_seed(seed, static_cast<uint64_t>(n));
    std::vector<char> entangling(n_samples);
    parallel_for(n_samples, n_threads, [&](int64_t i) {
      entangling[i] = sample_record(n, n_seed, i).entangling ? 1 : 0;
    });
    int64_t hits = 0;
    for (char e : entangling) hits += e;
    double f = double(hits) / double(n_samples);
    out.push_back({n, f, std::sqrt(f * (1.0 - f) / double(n_samples))});
  }
  return out;
}

}  // namespace qdeph
