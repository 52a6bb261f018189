#include "qdeph/model.hpp"

#include <cmath>
#include <stdexcept>

#include "qdeph/rng.hpp"
#include "qdeph/spectral.hpp"

namespace qdeph {

namespace {
constexpr double kHermTol = 1e-12;

double max_abs(const ComplexMatrix& M) {
  return M.cwiseAbs().maxCoeff();
}
}  // namespace

DephasingModel make_model(int n, const ComplexMatrix& C, const RealMatrix& h) {
  if (n < 1) throw std::invalid_argument("qubit count must be positive");
  if (C.rows() != n || C.cols() != n)
    throw std::invalid_argument("C must be n x n");
  if (h.rows() != n || h.cols() != n)
    throw std::invalid_argument("h must be n x n");

  double scale = std::max(1.0, max_abs(C));
  if ((C - C.adjoint()).cwiseAbs().maxCoeff() > kHermTol * scale)
    throw std::invalid_argument("C is not Hermitian within tolerance");

  double hscale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > kHermTol * hscale)
    throw std::invalid_argument("h is not symmetric within tolerance");

  DephasingModel m;
  m.n = n;
  m.C = 0.5 * (C + C.adjoint());  // absorb file I/O rounding
  m.h = 0.5 * (h + h.transpose());
  m.h.diagonal().setZero();  // Z_i^2 = 1 makes the diagonal a constant
  m.physical = is_psd(m.C);
  return m;
}

DephasingModel case_c1(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  ComplexMatrix C = ComplexMatrix::Constant(n, n, Complex(1.0 / n, 0.0));
  return make_model(n, C, RealMatrix::Zero(n, n));
}

DephasingModel case_c2(int n) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  ComplexMatrix C(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        C(i, j) = Complex(n - 1, 0.0);
      else
        C(i, j) = (i < j) ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
    }
  return make_model(n, C, RealMatrix::Zero(n, n));
}

DephasingModel case_c3(int n) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  ComplexMatrix C(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double phase = 2.0 * M_PI * (j - k) / n;
      C(j, k) = Complex(std::cos(phase), std::sin(phase)) / double(n);
    }
  return make_model(n, C, RealMatrix::Zero(n, n));
}

DephasingModel g_theta(double theta) {
  const int n = 3;
  ComplexVector g(n);
  for (int j = 0; j < n; ++j)
    g(j) = Complex(std::cos(j * theta), std::sin(j * theta)) / std::sqrt(3.0);
  ComplexMatrix C = g * g.adjoint();
  return make_model(n, C, RealMatrix::Zero(n, n));
}

DephasingModel two_qubit_family(double r, double alpha) {
  if (r < 0) throw std::invalid_argument("r must be >= 0");
  ComplexVector l(2);
  l(0) = 1.0;
  l(1) = Complex(r * std::cos(alpha), r * std::sin(alpha));
  ComplexMatrix C = l * l.adjoint();
  return make_model(2, C, RealMatrix::Zero(2, 2));
}

DephasingModel sample_ginibre(int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  SplitMix64 rng(seed);
  ComplexMatrix w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double re = rng.next_normal();
      double im = rng.next_normal();
      w(i, j) = Complex(re, im);
    }
  ComplexMatrix C = w * w.adjoint();
  C = 0.5 * (C + C.adjoint());
  return make_model(n, C, RealMatrix::Zero(n, n));
}

double rank_proxy(const DephasingModel& m) {
  double tr = m.C.trace().real();
  if (tr == 0.0) throw std::invalid_argument("rank_proxy undefined for tr C = 0");
  double tr2 = (m.C * m.C).trace().real();
  return tr2 / (tr * tr);
}

double rel_imag_norm(const DephasingModel& m) {
  ComplexMatrix off = m.C;
  off.diagonal().setZero();
  double denom = off.norm();
  if (denom == 0.0)
    throw std::invalid_argument("rel_imag_norm undefined for diagonal C");
  return m.C.imag().norm() / denom;
}

}  // namespace qdeph
