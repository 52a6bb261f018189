#include "qdeph/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "qdeph/spectral.hpp"

namespace qdeph {

std::vector<int> index_to_label(int index, int n) {
  std::vector<int> alpha(n);
  for (int i = 0; i < n; ++i) {
    int bit = (index >> (n - 1 - i)) & 1;
    alpha[i] = bit ? -1 : 1;
  }
  return alpha;
}

int label_to_index(const std::vector<int>& alpha) {
  int n = static_cast<int>(alpha.size());
  int index = 0;
  for (int i = 0; i < n; ++i)
    if (alpha[i] == -1) index |= 1 << (n - 1 - i);
  return index;
}

double gamma_rate(const std::vector<int>& alpha, const std::vector<int>& beta,
                  const ComplexMatrix& C) {
  int n = static_cast<int>(alpha.size());
  if (static_cast<int>(beta.size()) != n || C.rows() != n)
    throw std::invalid_argument("label length mismatch");
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    double dk = alpha[k] - beta[k];
    if (dk == 0.0) continue;
    for (int m = 0; m < n; ++m)
      sum += dk * C(k, m).real() * (alpha[m] - beta[m]);
  }
  return 0.5 * sum;
}

double omega_freq(const std::vector<int>& alpha, const std::vector<int>& beta,
                  const ComplexMatrix& C, const RealMatrix& h) {
  int n = static_cast<int>(alpha.size());
  if (static_cast<int>(beta.size()) != n || C.rows() != n || h.rows() != n)
    throw std::invalid_argument("label length mismatch");
  double sum = 0.0;
  for (int k = 0; k < n; ++k)
    for (int m = k + 1; m < n; ++m) {
      sum += (alpha[k] * beta[m] - alpha[m] * beta[k]) * C(k, m).imag();
      sum -= (alpha[k] * alpha[m] - beta[k] * beta[m]) * h(k, m);
    }
  return sum;
}

double gamma_rate(const std::vector<int>& alpha, const std::vector<int>& beta,
                  const DephasingModel& m) {
  return gamma_rate(alpha, beta, m.C);
}

double omega_freq(const std::vector<int>& alpha, const std::vector<int>& beta,
                  const DephasingModel& m) {
  return omega_freq(alpha, beta, m.C, m.h);
}

DensityMatrix evolve(const DensityMatrix& rho0, const ComplexMatrix& C,
                     const RealMatrix& h, double t) {
  if (rho0.n > kStateCap)
    throw std::invalid_argument("state size above cap");
  if (t < 0) throw std::invalid_argument("t must be >= 0");
  if (C.rows() != rho0.n)
    throw std::invalid_argument("generator size does not match state");

  const int n = rho0.n;
  const int dim = 1 << n;
  std::vector<std::vector<int>> labels(dim);
  for (int a = 0; a < dim; ++a) labels[a] = index_to_label(a, n);

  DensityMatrix out;
  out.n = n;
  out.rho = rho0.rho;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      if (a == b) continue;  // diagonal stationary
      double g = gamma_rate(labels[a], labels[b], C);
      double om = omega_freq(labels[a], labels[b], C, h);
      out.rho(a, b) *= std::exp(Complex(-g * t, om * t));
    }
  return out;
}

DensityMatrix evolve(const DensityMatrix& rho0, const DephasingModel& m,
                     double t) {
  return evolve(rho0, m.C, m.h, t);
}

DensityMatrix evolve(const DensityMatrix& rho0, const TransformedModel& m,
                     double t) {
  return evolve(rho0, m.C_tilde, m.h_tilde, t);
}

DensityMatrix product_plus_state(int n) {
  if (n < 1 || n > kStateCap) throw std::invalid_argument("bad qubit count");
  int dim = 1 << n;
  DensityMatrix out;
  out.n = n;
  out.rho = ComplexMatrix::Constant(dim, dim, Complex(1.0 / dim, 0.0));
  return out;
}

namespace {
DensityMatrix superposition_state(const std::vector<int>& alpha,
                                  const std::vector<int>& beta) {
  int n = static_cast<int>(alpha.size());
  int dim = 1 << n;
  int a = label_to_index(alpha);
  int b = label_to_index(beta);
  DensityMatrix out;
  out.n = n;
  out.rho = ComplexMatrix::Zero(dim, dim);
  out.rho(a, a) = 0.5;
  out.rho(b, b) = 0.5;
  out.rho(a, b) = 0.5;
  out.rho(b, a) = 0.5;
  return out;
}
}  // namespace

DensityMatrix bell_state(int i, int j, int n) {
  if (!(0 <= i && i < j && j < n) || n > kStateCap)
    throw std::invalid_argument("need 0 <= i < j < n");
  std::vector<int> alpha(n, 1), beta(n, 1);
  beta[i] = beta[j] = -1;
  return superposition_state(alpha, beta);
}

DensityMatrix bar_state(int i, int j, int n) {
  if (!(0 <= i && i < j && j < n) || n > kStateCap)
    throw std::invalid_argument("need 0 <= i < j < n");
  std::vector<int> alpha(n, 1), beta(n, 1);
  for (int k = 0; k <= i; ++k) alpha[k] = beta[k] = -1;
  alpha[j] = 1;
  beta[j] = -1;
  return superposition_state(alpha, beta);
}

ComplexMatrix partial_transpose_state(const DensityMatrix& rho,
                                      const Bipartition& part) {
  if (part.n != rho.n)
    throw std::invalid_argument("bipartition size does not match state");
  const int n = rho.n;
  const int dim = 1 << n;
  // state-index bit for qubit q is at position n-1-q
  int abits = 0;
  for (int q : part.qubits) abits |= 1 << (n - 1 - q);

  ComplexMatrix out(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      int ap = (a & ~abits) | (b & abits);
      int bp = (b & ~abits) | (a & abits);
      out(ap, bp) = rho.rho(a, b);
    }
  return out;
}

double log_negativity(const DensityMatrix& rho, const Bipartition& part) {
  double tn = trace_norm(partial_transpose_state(rho, part));
  double en = std::log2(tn);
  // trace-norm roundoff puts PPT states a few ulp above 1; snap to zero
  return en < 1e-12 ? 0.0 : en;
}

std::vector<std::pair<double, double>> negativity_trace(
    const DephasingModel& m, const DensityMatrix& rho0,
    const Bipartition& part, const std::vector<double>& t_grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    DensityMatrix rho = evolve(rho0, m, t);
    out.emplace_back(t, log_negativity(rho, part));
  }
  return out;
}

double positivity_probe(const TransformedModel& tm, double dt) {
  auto components = lindblad_decomposition(tm.C_tilde);
  if (components.empty() || components.back().gamma >= 0)
    throw std::invalid_argument("positivity_probe: no negative gamma present");
  const ComplexVector& l0 = components.back().l;  // most negative gamma

  const int n = tm.n;
  const int dim = 1 << n;
  // psi = |+>^n; phi = L0 psi with amplitudes (sum_j l0_j alpha_j)/sqrt(dim)
  ComplexVector phi(dim);
  for (int a = 0; a < dim; ++a) {
    std::vector<int> alpha = index_to_label(a, n);
    Complex amp = 0.0;
    for (int j = 0; j < n; ++j) amp += l0(j) * double(alpha[j]);
    phi(a) = amp / std::sqrt(double(dim));
  }
  double norm = phi.norm();
  if (norm == 0.0)
    throw std::invalid_argument("positivity_probe: degenerate probe state");
  phi /= norm;

  DensityMatrix rho = evolve(product_plus_state(n), tm, dt);
  return (phi.adjoint() * rho.rho * phi).value().real();
}

std::vector<std::pair<int, int>> dark_coherences(const DephasingModel& m,
                                                 double tol) {
  const int n = m.n;
  const int dim = 1 << n;
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < dim; ++a) {
    std::vector<int> alpha = index_to_label(a, n);
    for (int b = a + 1; b < dim; ++b) {
      std::vector<int> beta = index_to_label(b, n);
      double g = gamma_rate(alpha, beta, m);
      double om = omega_freq(alpha, beta, m);
      if (std::abs(g) <= tol && std::abs(om) <= tol) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<double> geometric_grid(double tmin, double tmax, int points) {
  if (points < 2 || tmin <= 0 || tmax <= tmin)
    throw std::invalid_argument("bad grid parameters");
  std::vector<double> grid;
  grid.reserve(points);
  grid.push_back(0.0);
  double ratio = std::pow(tmax / tmin, 1.0 / (points - 2));
  for (int k = 0; k < points - 1; ++k)
    grid.push_back(tmin * std::pow(ratio, k));
  grid.back() = tmax;
  return grid;
}

}  // namespace qdeph
