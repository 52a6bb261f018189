#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qdeph/dynamics.hpp"
#include "qdeph/model.hpp"
#include "qdeph/types.hpp"

namespace qdeph {

// Column-stacking vectorization throughout: vec(A X B) = (B^T kron A) vec(X).

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// sum_j coeffs_j Z_j as a dense 2^n operator.
ComplexMatrix z_sum_operator(const ComplexVector& coeffs);

// Superoperator of rho -> -i[H, rho] + sum_k gamma_k D[L_k] rho.
ComplexMatrix liouvillian_superop(
    const ComplexMatrix& H,
    const std::vector<std::pair<double, ComplexMatrix>>& lindblads);

ComplexMatrix dissipator_superop(const ComplexMatrix& L);  // D[L]

// Operator-norm deviation between D[A - iB] and the averaged forward/reverse
// measurement-plus-feedforward generators (k = 4 alpha_FF = 4).
double feedforward_equiv(const ComplexMatrix& L);

struct ClassicalMcResult {
  DensityMatrix rho_mc;
  double max_dev = 0.0;  // max entrywise |rho_mc - rho_analytic|
};

// Gaussian phase-noise average: Phi ~ N(0, C t), one exact diagonal unitary
// per trajectory. Requires real PSD C and h = 0.
ClassicalMcResult classical_mc(const DephasingModel& m,
                               const DensityMatrix& rho0, double t,
                               int64_t n_traj, uint64_t seed,
                               int n_threads = 0);

}  // namespace qdeph
