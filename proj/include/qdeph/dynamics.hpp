#pragma once

#include <utility>
#include <vector>

#include "qdeph/model.hpp"
#include "qdeph/pt.hpp"
#include "qdeph/types.hpp"

namespace qdeph {

inline constexpr int kStateCap = 10;

// Z product basis labels: alpha_i = +1 <-> |0>_i, qubit 0 most significant.
std::vector<int> index_to_label(int index, int n);
int label_to_index(const std::vector<int>& alpha);

struct DensityMatrix {
  int n = 0;
  ComplexMatrix rho;  // 2^n x 2^n, Hermitian, unit trace
};

// Coherence decay rate Gamma_ab = (a-b)^T Re(C) (a-b) / 2.
double gamma_rate(const std::vector<int>& alpha, const std::vector<int>& beta,
                  const ComplexMatrix& C);
// Coherence rotation frequency from Im(C) and h.
double omega_freq(const std::vector<int>& alpha, const std::vector<int>& beta,
                  const ComplexMatrix& C, const RealMatrix& h);

double gamma_rate(const std::vector<int>& alpha, const std::vector<int>& beta,
                  const DephasingModel& m);
double omega_freq(const std::vector<int>& alpha, const std::vector<int>& beta,
                  const DephasingModel& m);

// Exact elementwise propagation: rho_ab(t) = exp[(i Omega - Gamma) t] rho_ab.
DensityMatrix evolve(const DensityMatrix& rho0, const ComplexMatrix& C,
                     const RealMatrix& h, double t);
DensityMatrix evolve(const DensityMatrix& rho0, const DephasingModel& m,
                     double t);
DensityMatrix evolve(const DensityMatrix& rho0, const TransformedModel& m,
                     double t);

DensityMatrix product_plus_state(int n);
DensityMatrix bell_state(int i, int j, int n);
DensityMatrix bar_state(int i, int j, int n);

ComplexMatrix partial_transpose_state(const DensityMatrix& rho,
                                      const Bipartition& part);

double log_negativity(const DensityMatrix& rho, const Bipartition& part);

std::vector<std::pair<double, double>> negativity_trace(
    const DephasingModel& m, const DensityMatrix& rho0,
    const Bipartition& part, const std::vector<double>& t_grid);

// <phi|rho(dt)|phi> with psi = |+>^n, phi = L0 psi, L0 the most-negative-gamma
// jump of the transformed generator; ~ gamma_0 * dt for small dt.
double positivity_probe(const TransformedModel& tm, double dt);

// Coherence pairs (a, b), a != b, with Gamma = Omega = 0: candidates for
// undamped steady-state coherence.
std::vector<std::pair<int, int>> dark_coherences(const DephasingModel& m,
                                                 double tol = 1e-10);

// points-1 geometric samples on [tmin, tmax], prefixed with t = 0.
std::vector<double> geometric_grid(double tmin, double tmax, int points);

}  // namespace qdeph
