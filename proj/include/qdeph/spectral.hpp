#pragma once

#include <vector>

#include "qdeph/types.hpp"

namespace qdeph {

struct SpectralReport {
  std::vector<double> eigenvalues;  // ascending
  double lambda_min = 0.0;
  bool is_psd = false;
  double pseudo_det = 1.0;
  int numerical_rank = 0;
};

inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kDefaultPsdTol = 1e-10;

// Full real spectrum of a Hermitian matrix, ascending. Throws on
// non-Hermitian input.
SpectralReport eig_hermitian(const ComplexMatrix& M,
                             double psd_tol = kDefaultPsdTol,
                             double rank_tol = kDefaultRankTol);

bool is_psd(const ComplexMatrix& M, double tol = kDefaultPsdTol);

// Product of eigenvalues with |lambda| > rank_tol * max|lambda|; 1 for the
// zero matrix by convention.
double pseudo_det(const ComplexMatrix& M, double rank_tol = kDefaultRankTol);

struct LindbladComponent {
  double gamma;
  ComplexVector l;  // unit vector; jump operator is sum_j l_j Z_j
};

// C = sum_k gamma_k l_k l_k^dag, gammas sorted descending, near-zero
// components dropped. Negative gammas are kept (transformed models need them).
std::vector<LindbladComponent> lindblad_decomposition(
    const ComplexMatrix& C, double rank_tol = kDefaultRankTol);

double trace_norm(const ComplexMatrix& M);  // sum |lambda_i|

}  // namespace qdeph
