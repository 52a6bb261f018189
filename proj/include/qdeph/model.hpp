#pragma once

#include <cstdint>

#include "qdeph/types.hpp"

namespace qdeph {

// Correlated dephasing environment on n qubits: Hermitian rate matrix C and
// symmetric zero-diagonal Ising (Lamb-shift) couplings h.
struct DephasingModel {
  int n = 0;
  ComplexMatrix C;
  RealMatrix h;
  bool physical = false;  // true iff C is PSD within tolerance
};

struct EnsembleRecord {
  int64_t sample_index = 0;
  uint64_t seed = 0;
  double lambda_min = 0.0;
  double rel_imag_norm = 0.0;
  double rank_proxy = 0.0;
  bool entangling = false;
};

// Validates and normalizes (symmetrizes within tolerance, zeroes the h
// diagonal). Throws std::invalid_argument on dimension mismatch,
// non-Hermitian C, or non-symmetric h.
DephasingModel make_model(int n, const ComplexMatrix& C, const RealMatrix& h);

DephasingModel case_c1(int n);               // c_ij = 1/n
DephasingModel case_c2(int n);               // diag n-1, +i above, -i below
DephasingModel case_c3(int n);               // f1 f1^dag, c_jk = w^{j-k}/n
DephasingModel g_theta(double theta);        // n=3, g(theta) g(theta)^dag
DephasingModel two_qubit_family(double r, double alpha);  // l = (1, r e^{ia})
DephasingModel sample_ginibre(int n, uint64_t seed);      // C = w w^dag

double rank_proxy(const DephasingModel& m);     // tr(C^2)/tr(C)^2
double rel_imag_norm(const DephasingModel& m);  // |Im C|_F / |C - diag C|_F

}  // namespace qdeph
