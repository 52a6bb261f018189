#include "qdeph/verify.hpp"

#include <cmath>
#include <stdexcept>

#include "qdeph/parallel.hpp"
#include "qdeph/rng.hpp"
#include "qdeph/spectral.hpp"

namespace qdeph {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix z_sum_operator(const ComplexVector& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  const int dim = 1 << n;
  ComplexMatrix op = ComplexMatrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    Complex diag = 0.0;
    for (int q = 0; q < n; ++q) {
      int bit = (a >> (n - 1 - q)) & 1;
      diag += coeffs(q) * (bit ? -1.0 : 1.0);
    }
    op(a, a) = diag;
  }
  return op;
}

ComplexMatrix liouvillian_superop(
    const ComplexMatrix& H,
    const std::vector<std::pair<double, ComplexMatrix>>& lindblads) {
  const Eigen::Index d = H.rows();
  if (H.cols() != d) throw std::invalid_argument("H must be square");
  ComplexMatrix id = ComplexMatrix::Identity(d, d);
  Complex i(0.0, 1.0);
  ComplexMatrix S = -i * (kron(id, H) - kron(H.transpose(), id));
  for (const auto& [gamma, L] : lindblads) {
    if (L.rows() != d || L.cols() != d)
      throw std::invalid_argument("jump operator dimension mismatch");
    S += gamma * dissipator_superop(L);
  }
  return S;
}

ComplexMatrix dissipator_superop(const ComplexMatrix& L) {
  const Eigen::Index d = L.rows();
  ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix LdL = L.adjoint() * L;
  return kron(L.conjugate(), L) -
         0.5 * (kron(id, LdL) + kron(LdL.transpose(), id));
}

namespace {
// superoperator of rho -> [X, Y rho + rho Y]
ComplexMatrix sandwich_commutator(const ComplexMatrix& X,
                                  const ComplexMatrix& Y) {
  const Eigen::Index d = X.rows();
  ComplexMatrix id = ComplexMatrix::Identity(d, d);
  return kron(id, X * Y) + kron(Y.transpose(), X) - kron(X.transpose(), Y) -
         kron((Y * X).transpose(), id);
}
}  // namespace

double feedforward_equiv(const ComplexMatrix& L) {
  ComplexMatrix A = 0.5 * (L + L.adjoint());
  ComplexMatrix B = Complex(0.0, 0.5) * (L - L.adjoint());
  Complex i(0.0, 1.0);

  // k = 4 alpha_FF = 4: measure A, drive B, plus the reverse with sign flip.
  ComplexMatrix forward = dissipator_superop(A) + dissipator_superop(B) -
                          i * sandwich_commutator(B, A);
  ComplexMatrix reverse = dissipator_superop(B) + dissipator_superop(A) +
                          i * sandwich_commutator(A, B);
  ComplexMatrix dev = 0.5 * (forward + reverse) - dissipator_superop(L);
  Eigen::JacobiSVD<ComplexMatrix> svd(dev);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

ClassicalMcResult classical_mc(const DephasingModel& m,
                               const DensityMatrix& rho0, double t,
                               int64_t n_traj, uint64_t seed, int n_threads) {
  if (m.C.imag().cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("classical_mc requires real C");
  if (!is_psd(m.C)) throw std::invalid_argument("classical_mc requires PSD C");
  if (m.h.cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("classical_mc requires h = 0");
  if (m.n > kStateCap) throw std::invalid_argument("state size above cap");
  if (n_traj < 1) throw std::invalid_argument("need at least one trajectory");

  const int n = m.n;
  const int dim = 1 << n;

  // symmetric factorization of Re(C) t, valid for singular PSD matrices
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m.C.real() * t);
  RealMatrix factor =
      es.eigenvectors() *
      es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

  std::vector<std::vector<int>> labels(dim);
  for (int a = 0; a < dim; ++a) labels[a] = index_to_label(a, n);

  // Fixed-size chunks with an ordered final reduction keep the result
  // independent of the thread count.
  const int64_t chunk_size = 1024;
  const int64_t n_chunks = (n_traj + chunk_size - 1) / chunk_size;
  std::vector<ComplexMatrix> chunk_sums(
      n_chunks, ComplexMatrix::Zero(dim, dim));

  parallel_for(n_chunks, n_threads, [&](int64_t chunk) {
    ComplexMatrix local = ComplexMatrix::Zero(dim, dim);
    RealVector z(n), phases(n);
    std::vector<double> theta(dim);
    int64_t begin = chunk * chunk_size;
    int64_t end = std::min(begin + chunk_size, n_traj);
    for (int64_t traj = begin; traj < end; ++traj) {
      SplitMix64 rng(derive_seed(seed, static_cast<uint64_t>(traj)));
      for (int q = 0; q < n; ++q) z(q) = rng.next_normal();
      phases = factor * z;  // Phi ~ N(0, C t)
      for (int a = 0; a < dim; ++a) {
        double th = 0.0;
        for (int q = 0; q < n; ++q) th += phases(q) * labels[a][q];
        theta[a] = th;
      }
      // U = exp(-i sum Phi_q Z_q) is diagonal with phases exp(-i theta_a)
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
          double d = theta[b] - theta[a];
          local(a, b) += rho0.rho(a, b) * Complex(std::cos(d), std::sin(d));
        }
    }
    chunk_sums[chunk] = local;
  });

  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& s : chunk_sums) sum += s;

  ClassicalMcResult out;
  out.rho_mc.n = n;
  out.rho_mc.rho = sum / static_cast<double>(n_traj);
  DensityMatrix exact = evolve(rho0, m, t);
  out.max_dev = (out.rho_mc.rho - exact.rho).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace qdeph
