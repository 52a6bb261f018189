#include "qdeph/tomography.hpp"

#include <cmath>
#include <stdexcept>

#include "qdeph/dynamics.hpp"

namespace qdeph {

int pair_count(int n) { return n * (n - 1) / 2; }

int pair_index(int k, int m, int n) {
  if (!(0 <= k && k < m && m < n))
    throw std::invalid_argument("need 0 <= k < m < n");
  // lexicographic over (k, m)
  return k * n - k * (k + 1) / 2 + (m - k - 1);
}

MeasurementVectors measurement_vectors(int i, int j, int n) {
  if (!(0 <= i && i < j && j < n))
    throw std::invalid_argument("need 0 <= i < j < n");
  const int P = pair_count(n);
  MeasurementVectors v;
  v.i = i;
  v.j = j;
  v.n = n;
  v.q = RealVector::Zero(P);
  v.w = RealVector::Zero(P);
  v.q_bar = RealVector::Zero(P);
  v.w_bar = RealVector::Zero(P);

  for (int k = 0; k < n; ++k)
    for (int m = k + 1; m < n; ++m) {
      int p = pair_index(k, m, n);
      bool k_in = (k == i || k == j);
      bool m_in = (m == i || m == j);
      if (k_in && !m_in) {
        v.q(p) = 2;
        v.w(p) = 2;
      } else if (!k_in && m_in) {
        v.q(p) = 2;
        v.w(p) = -2;
      }

      if (m == j && k <= i) {
        v.q_bar(p) = -2;
        v.w_bar(p) = 2;
      } else if (m == j && i < k && k < j) {
        v.q_bar(p) = 2;
        v.w_bar(p) = -2;
      } else if (k == j && m > j) {
        v.q_bar(p) = 2;
        v.w_bar(p) = 2;
      }
    }
  return v;
}

MeasurementSet predict_measurements(const DephasingModel& model) {
  const int n = model.n;
  const int P = pair_count(n);
  MeasurementSet out;
  out.n = n;
  out.gamma_single = RealVector(n);
  out.gamma_pair = RealVector(P);
  out.omega_pair = RealVector(P);
  out.gamma_bar = RealVector(P);
  out.omega_bar = RealVector(P);

  for (int i = 0; i < n; ++i)
    out.gamma_single(i) = 2.0 * model.C(i, i).real();

  // vectorized strict upper triangles of h and Im(C)
  RealVector hvec(P), tvec(P);
  for (int k = 0; k < n; ++k)
    for (int m = k + 1; m < n; ++m) {
      int p = pair_index(k, m, n);
      hvec(p) = model.h(k, m);
      tvec(p) = model.C(k, m).imag();
    }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int p = pair_index(i, j, n);
      out.gamma_pair(p) = 2.0 * (model.C(i, i).real() + model.C(j, j).real() +
                                 2.0 * model.C(i, j).real());
      out.gamma_bar(p) = 2.0 * model.C(j, j).real();
      MeasurementVectors v = measurement_vectors(i, j, n);
      out.omega_pair(p) = -hvec.dot(v.q) + tvec.dot(v.w);
      out.omega_bar(p) = -hvec.dot(v.q_bar) + tvec.dot(v.w_bar);
    }
  return out;
}

CoherenceTrace synthesize_trace(double omega, double gamma,
                                const std::vector<double>& t_grid,
                                double noise_sigma, SplitMix64& rng) {
  if (gamma < 0) throw std::invalid_argument("gamma must be >= 0");
  CoherenceTrace trace;
  trace.times = t_grid;
  trace.samples.reserve(t_grid.size());
  for (double t : t_grid) {
    Complex s = 0.5 * std::exp(Complex(-gamma * t, omega * t));
    if (noise_sigma > 0)
      s += Complex(noise_sigma * rng.next_normal(),
                   noise_sigma * rng.next_normal());
    trace.samples.push_back(s);
  }
  return trace;
}

std::pair<double, double> fit_trace(const CoherenceTrace& trace) {
  const size_t count = trace.samples.size();
  if (count < 4) throw std::invalid_argument("need at least 4 samples");

  double max_abs = 0.0;
  for (const Complex& s : trace.samples)
    max_abs = std::max(max_abs, std::abs(s));
  double floor = 1e-6 * max_abs;
  if (max_abs == 0.0 || floor == 0.0)
    throw std::invalid_argument("degenerate fit window");

  // origin-constrained fits: ln|2s| = -Gamma t, unwrapped arg(s) = Omega t
  double st2 = 0.0, st_logmag = 0.0, st_phase = 0.0;
  double prev_phase = 0.0;
  bool any = false;
  for (size_t k = 0; k < count; ++k) {
    const Complex& s = trace.samples[k];
    if (std::abs(s) < floor) continue;  // noise-dominated tail
    double t = trace.times[k];
    double phase = std::arg(s);
    // cumulative nearest-branch unwrap
    phase += 2.0 * M_PI * std::round((prev_phase - phase) / (2.0 * M_PI));
    prev_phase = phase;
    st2 += t * t;
    st_logmag += t * std::log(2.0 * std::abs(s));
    st_phase += t * phase;
    any = true;
  }
  if (!any || st2 == 0.0) throw std::invalid_argument("degenerate fit window");
  return {st_phase / st2, -st_logmag / st2};
}

RealMatrix measurement_matrix(int n) {
  const int P = pair_count(n);
  RealMatrix M(2 * P, 2 * P);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int p = pair_index(i, j, n);
      MeasurementVectors v = measurement_vectors(i, j, n);
      M.row(p) << -v.q.transpose(), v.w.transpose();
      M.row(P + p) << -v.q_bar.transpose(), v.w_bar.transpose();
    }
  return M;
}

RecoveryResult recover(const MeasurementSet& meas) {
  const int n = meas.n;
  const int P = pair_count(n);
  RecoveryResult out;
  out.C_hat = ComplexMatrix::Zero(n, n);
  out.h_hat = RealMatrix::Zero(n, n);

  for (int i = 0; i < n; ++i)
    out.C_hat(i, i) = meas.gamma_single(i) / 2.0;

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int p = pair_index(i, j, n);
      double re = (meas.gamma_pair(p) / 2.0 - out.C_hat(i, i).real() -
                   out.C_hat(j, j).real()) /
                  2.0;
      out.C_hat(i, j) += re;
      out.C_hat(j, i) += re;
    }

  RealMatrix M = measurement_matrix(n);
  RealVector rhs(2 * P);
  rhs.head(P) = meas.omega_pair;
  rhs.tail(P) = meas.omega_bar;

  Eigen::ColPivHouseholderQR<RealMatrix> qr(M);
  qr.setThreshold(1e-10);
  out.rank = static_cast<int>(qr.rank());
  if (out.rank < 2 * P) throw RankDeficientError(out.rank, 2 * P);

  RealVector solution = qr.solve(rhs);
  for (int k = 0; k < n; ++k)
    for (int m = k + 1; m < n; ++m) {
      int p = pair_index(k, m, n);
      out.h_hat(k, m) = solution(p);
      out.h_hat(m, k) = solution(p);
      Complex im(0.0, solution(P + p));
      out.C_hat(k, m) += im;
      out.C_hat(m, k) -= im;
    }
  return out;
}

RoundtripReport roundtrip(const DephasingModel& model, double noise_sigma,
                          const std::vector<double>& t_grid, uint64_t seed) {
  const int n = model.n;
  if (n < 2 || n > 6) throw std::invalid_argument("roundtrip supports n in [2, 6]");
  const int P = pair_count(n);
  SplitMix64 rng(seed);

  auto tracked = [&](const DensityMatrix& rho0, int a, int b) {
    CoherenceTrace trace;
    trace.times = t_grid;
    for (double t : t_grid) {
      DensityMatrix rho = evolve(rho0, model, t);
      Complex s = rho.rho(a, b);
      if (noise_sigma > 0)
        s += Complex(noise_sigma * rng.next_normal(),
                     noise_sigma * rng.next_normal());
      trace.samples.push_back(s);
    }
    return trace;
  };

  MeasurementSet meas;
  meas.n = n;
  meas.gamma_single = RealVector(n);
  meas.gamma_pair = RealVector(P);
  meas.omega_pair = RealVector(P);
  meas.gamma_bar = RealVector(P);
  meas.omega_bar = RealVector(P);

  const int dim = 1 << n;
  for (int i = 0; i < n; ++i) {
    // single-qubit coherence: qubit i in |+>, rest |0>
    std::vector<int> alpha(n, 1), beta(n, 1);
    beta[i] = -1;
    DensityMatrix rho0;
    rho0.n = n;
    rho0.rho = ComplexMatrix::Zero(dim, dim);
    int a = label_to_index(alpha), b = label_to_index(beta);
    rho0.rho(a, a) = rho0.rho(b, b) = 0.5;
    rho0.rho(a, b) = rho0.rho(b, a) = 0.5;
    auto [omega, gamma] = fit_trace(tracked(rho0, a, b));
    meas.gamma_single(i) = gamma;
  }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int p = pair_index(i, j, n);
      {
        std::vector<int> alpha(n, 1), beta(n, 1);
        beta[i] = beta[j] = -1;
        auto [omega, gamma] = fit_trace(tracked(
            bell_state(i, j, n), label_to_index(alpha), label_to_index(beta)));
        meas.gamma_pair(p) = gamma;
        meas.omega_pair(p) = omega;
      }
      {
        std::vector<int> alpha(n, 1), beta(n, 1);
        for (int k = 0; k <= i; ++k) alpha[k] = beta[k] = -1;
        beta[j] = -1;
        auto [omega, gamma] = fit_trace(tracked(
            bar_state(i, j, n), label_to_index(alpha), label_to_index(beta)));
        meas.gamma_bar(p) = gamma;
        meas.omega_bar(p) = omega;
      }
    }

  RecoveryResult rec = recover(meas);
  RoundtripReport report;
  report.rank = rec.rank;
  report.err_re_c = (rec.C_hat.real() - model.C.real()).norm();
  report.err_im_c = (rec.C_hat.imag() - model.C.imag()).norm();
  report.err_h = (rec.h_hat - model.h).norm();
  return report;
}

}  // namespace qdeph
