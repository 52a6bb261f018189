#pragma once

#include <cstdint>
#include <vector>

#include "qdeph/model.hpp"
#include "qdeph/types.hpp"

namespace qdeph {

// Proper bipartition {A, complement}; A is a sorted, non-empty, proper subset
// of {0..n-1}.
struct Bipartition {
  int n = 0;
  std::vector<int> qubits;

  static Bipartition make(int n, std::vector<int> qubits);
  static Bipartition from_mask(int n, uint32_t mask);
  uint32_t mask() const;
  bool contains(int q) const;
};

// Coefficients of the generator governing the partial-transposed state.
// C_tilde is Hermitian but need not be PSD.
struct TransformedModel {
  int n = 0;
  ComplexMatrix C_tilde;
  RealMatrix h_tilde;
  Bipartition part;
};

// Coefficient transform under partial transposition with respect to `part`.
// A is canonicalized to a prefix by relabeling before the case rules apply.
TransformedModel pt_transform(const DephasingModel& m, const Bipartition& part);

// All subsets containing qubit 0 except the full set, ascending bitmask
// order; complements are redundant for the witness spectrum.
std::vector<Bipartition> enumerate_bipartitions(int n);

// lambda_min of C_tilde with h forced to zero before the transform.
double witness(const DephasingModel& m, const Bipartition& part);

struct WitnessResult {
  double lambda_min = 0.0;
  Bipartition part;
};

inline constexpr int kWitnessAllCap = 16;

WitnessResult witness_all(const DephasingModel& m, int n_threads = 0,
                          int cap = kWitnessAllCap);

// Classification threshold: entangling iff lambda < -1e-12 * max(1, |C|_F).
double entangling_threshold(const ComplexMatrix& C);

}  // namespace qdeph
