#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdeph/model.hpp"
#include "qdeph/rng.hpp"
#include "qdeph/types.hpp"

namespace qdeph {

// Ordered-pair index (k, m), k < m, lexicographic.
int pair_index(int k, int m, int n);
int pair_count(int n);

struct MeasurementVectors {
  int i = 0, j = 0, n = 0;
  RealVector q, w, q_bar, w_bar;  // length n(n-1)/2, entries in {-2, 0, 2}
};

MeasurementVectors measurement_vectors(int i, int j, int n);

struct MeasurementSet {
  int n = 0;
  RealVector gamma_single;  // Gamma_i = 2 c_ii, length n
  RealVector gamma_pair;    // Gamma_ij, pair-indexed
  RealVector omega_pair;    // Omega_ij
  RealVector gamma_bar;     // recorded but unused in recovery
  RealVector omega_bar;
};

MeasurementSet predict_measurements(const DephasingModel& m);

struct CoherenceTrace {
  std::vector<double> times;
  std::vector<Complex> samples;  // tracked matrix element, 1/2 at t = 0
};

CoherenceTrace synthesize_trace(double omega, double gamma,
                                const std::vector<double>& t_grid,
                                double noise_sigma, SplitMix64& rng);

// (Omega_hat, Gamma_hat): origin-constrained line fits of unwrapped phase and
// log magnitude. Throws on a degenerate window.
std::pair<double, double> fit_trace(const CoherenceTrace& trace);

class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(int rank, int expected)
      : std::runtime_error("measurement system rank " + std::to_string(rank) +
                           " of " + std::to_string(expected)),
        rank(rank),
        expected(expected) {}
  int rank;
  int expected;
};

// Stacked [-q^T | w^T] / [-qbar^T | wbar^T] rows, n(n-1) x n(n-1).
RealMatrix measurement_matrix(int n);

struct RecoveryResult {
  ComplexMatrix C_hat;
  RealMatrix h_hat;
  int rank = 0;
};

// Linear inversion of the measurement set; throws RankDeficientError when
// the stacked system cannot determine [h; Im C].
RecoveryResult recover(const MeasurementSet& meas);

struct RoundtripReport {
  double err_re_c = 0.0;  // Frobenius errors
  double err_im_c = 0.0;
  double err_h = 0.0;
  int rank = 0;
};

// Full pipeline: evolve Bell/bar states, track coherences, fit, invert.
RoundtripReport roundtrip(const DephasingModel& m, double noise_sigma,
                          const std::vector<double>& t_grid, uint64_t seed);

}  // namespace qdeph
