#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qdeph/model.hpp"

namespace qdeph {

struct ScanConfig {
  int n = 3;
  int64_t n_samples = 10000;
  uint64_t master_seed = 1;
  double bin_width = 0.02;
  int n_threads = 0;
};

struct Fig2Bin {
  double lo = 0.0;
  int64_t total = 0;
  int64_t entangling = 0;
  double fraction = 0.0;  // 0 for empty bins
};

struct Fig2Result {
  std::vector<EnsembleRecord> records;
  std::vector<Fig2Bin> bins;
};

// Per-sample (rel_imag_norm, lambda_min) for Ginibre environments, witness
// with respect to the first qubit, plus binned entangling fractions.
Fig2Result fig2_scan(const ScanConfig& config);

// Per-sample (rank_proxy, lambda_min).
std::vector<std::pair<double, double>> fig3_scan(const ScanConfig& config);

struct FractionPoint {
  int n = 0;
  double f = 0.0;
  double stderr_f = 0.0;  // binomial
};

std::vector<FractionPoint> fraction_vs_n(int n_min, int n_max,
                                         int64_t n_samples, uint64_t seed,
                                         int n_threads = 0);

EnsembleRecord sample_record(int n, uint64_t master_seed, int64_t index);

}  // namespace qdeph
