#include "qdeph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdeph {

namespace {
void require_hermitian(const ComplexMatrix& M) {
  if (M.rows() != M.cols())
    throw std::invalid_argument("matrix must be square");
  double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("matrix is not Hermitian");
}

Eigen::VectorXd spectrum(const ComplexMatrix& M) {
  require_hermitian(M);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(M,
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues();  // ascending
}
}  // namespace

SpectralReport eig_hermitian(const ComplexMatrix& M, double psd_tol,
                             double rank_tol) {
  Eigen::VectorXd ev = spectrum(M);
  SpectralReport report;
  report.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  report.lambda_min = ev(0);
  double lambda_max = ev(ev.size() - 1);
  report.is_psd = report.lambda_min >= -psd_tol * std::max(1.0, lambda_max);

  double scale = ev.cwiseAbs().maxCoeff();
  double cut = rank_tol * scale;
  report.pseudo_det = 1.0;
  report.numerical_rank = 0;
  for (double v : report.eigenvalues) {
    if (std::abs(v) > cut) {
      report.pseudo_det *= v;
      ++report.numerical_rank;
    }
  }
  return report;
}

bool is_psd(const ComplexMatrix& M, double tol) {
  Eigen::VectorXd ev = spectrum(M);
  return ev(0) >= -tol * std::max(1.0, ev(ev.size() - 1));
}

double pseudo_det(const ComplexMatrix& M, double rank_tol) {
  return eig_hermitian(M, kDefaultPsdTol, rank_tol).pseudo_det;
}

std::vector<LindbladComponent> lindblad_decomposition(const ComplexMatrix& C,
                                                      double rank_tol) {
  require_hermitian(C);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(C);
  Eigen::VectorXd ev = solver.eigenvalues();
  double cut = rank_tol * ev.cwiseAbs().maxCoeff();

  std::vector<LindbladComponent> out;
  for (int k = static_cast<int>(ev.size()) - 1; k >= 0; --k) {
    if (std::abs(ev(k)) <= cut) continue;
    out.push_back({ev(k), solver.eigenvectors().col(k)});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.gamma > b.gamma; });
  return out;
}

double trace_norm(const ComplexMatrix& M) {
  return spectrum(M).cwiseAbs().sum();
}

}  // namespace qdeph
