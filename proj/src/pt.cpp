#include "qdeph/pt.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "qdeph/parallel.hpp"
#include "qdeph/spectral.hpp"

namespace qdeph {

Bipartition Bipartition::make(int n, std::vector<int> qubits) {
  std::sort(qubits.begin(), qubits.end());
  qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
  if (qubits.empty() || static_cast<int>(qubits.size()) >= n)
    throw std::invalid_argument("bipartition must be a proper non-empty subset");
  if (qubits.front() < 0 || qubits.back() >= n)
    throw std::invalid_argument("qubit index out of range");
  return Bipartition{n, std::move(qubits)};
}

Bipartition Bipartition::from_mask(int n, uint32_t mask) {
  std::vector<int> qubits;
  for (int q = 0; q < n; ++q)
    if (mask & (1u << q)) qubits.push_back(q);
  return make(n, std::move(qubits));
}

uint32_t Bipartition::mask() const {
  uint32_t m = 0;
  for (int q : qubits) m |= 1u << q;
  return m;
}

bool Bipartition::contains(int q) const {
  return std::binary_search(qubits.begin(), qubits.end(), q);
}

TransformedModel pt_transform(const DephasingModel& m,
                              const Bipartition& part) {
  if (part.n != m.n)
    throw std::invalid_argument("bipartition size does not match model");
  const int n = m.n;
  const int a_size = static_cast<int>(part.qubits.size());

  // Relabel so A becomes the prefix {0..|A|-1}; relative order is preserved,
  // which keeps the i<j case rules unambiguous for mixed pairs.
  std::vector<int> perm;  // perm[new] = old
  perm.reserve(n);
  for (int q : part.qubits) perm.push_back(q);
  for (int q = 0; q < n; ++q)
    if (!part.contains(q)) perm.push_back(q);

  ComplexMatrix c(n, n);
  RealMatrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      c(i, j) = m.C(perm[i], perm[j]);
      h(i, j) = m.h(perm[i], perm[j]);
    }

  ComplexMatrix ct = c;
  RealMatrix ht = h;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Complex cij = c(i, j);
      double hij = h(i, j);
      Complex ct_ij;
      double ht_ij;
      if (j < a_size) {  // both in A
        ht_ij = -hij;
        ct_ij = std::conj(cij);
      } else if (i < a_size) {  // i in A, j outside
        ht_ij = cij.imag();
        ct_ij = Complex(-cij.real(), hij);
      } else {  // both outside
        ht_ij = hij;
        ct_ij = cij;
      }
      ct(i, j) = ct_ij;
      ct(j, i) = std::conj(ct_ij);
      ht(i, j) = ht_ij;
      ht(j, i) = ht_ij;
    }
  }

  TransformedModel out;
  out.n = n;
  out.C_tilde = ComplexMatrix(n, n);
  out.h_tilde = RealMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.C_tilde(perm[i], perm[j]) = ct(i, j);
      out.h_tilde(perm[i], perm[j]) = ht(i, j);
    }
  out.part = part;
  return out;
}

std::vector<Bipartition> enumerate_bipartitions(int n) {
  if (n < 2) throw std::invalid_argument("need at least two qubits");
  std::vector<Bipartition> out;
  const uint32_t full = (1u << n) - 1;
  for (uint32_t mask = 1; mask < full; mask += 2)
    out.push_back(Bipartition::from_mask(n, mask));
  return out;
}

double witness(const DephasingModel& m, const Bipartition& part) {
  DephasingModel stripped = m;
  stripped.h.setZero();
  TransformedModel tm = pt_transform(stripped, part);
  return eig_hermitian(tm.C_tilde).lambda_min;
}

WitnessResult witness_all(const DephasingModel& m, int n_threads, int cap) {
  if (m.n > cap)
    throw std::invalid_argument("witness_all: qubit count above cap");
  std::vector<Bipartition> parts = enumerate_bipartitions(m.n);
  std::vector<double> values(parts.size());
  parallel_for(static_cast<int64_t>(parts.size()), n_threads,
               [&](int64_t i) { values[i] = witness(m, parts[i]); });

  size_t best = 0;
  for (size_t i = 1; i < parts.size(); ++i)
    if (values[i] < values[best]) best = i;  // ties keep enumeration order
  return WitnessResult{values[best], parts[best]};
}

double entangling_threshold(const ComplexMatrix& C) {
  return 1e-12 * std::max(1.0, C.norm());
}

}  // namespace qdeph
