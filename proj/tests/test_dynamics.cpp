#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "qdeph/dynamics.hpp"
#include "qdeph/model.hpp"
#include "qdeph/rng.hpp"
#include "qdeph/spectral.hpp"
#include "qdeph/verify.hpp"

using namespace qdeph;

namespace {
// Independent oracle: exp(S t) applied to the vectorized state, with the
// superoperator assembled from the generator's defining form.
DensityMatrix evolve_superop(const DensityMatrix& rho0, const ComplexMatrix& C,
                             const RealMatrix& h, double t) {
  const int n = rho0.n;
  const int dim = 1 << n;
  ComplexMatrix H = ComplexMatrix::Zero(dim, dim);
  std::vector<ComplexMatrix> Z(n);
  for (int q = 0; q < n; ++q) {
    ComplexVector e = ComplexVector::Zero(n);
    e(q) = 1.0;
    Z[q] = z_sum_operator(e);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) H += 0.5 * h(i, j) * Z[i] * Z[j];

  Complex im(0, 1);
  ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  ComplexMatrix S = -im * (kron(id, H) - kron(H.transpose(), id));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ComplexMatrix ZiZj = Z[i] * Z[j];
      S += C(i, j) * (kron(Z[j].conjugate(), Z[i]) -
                      0.5 * (kron(id, ZiZj) + kron(ZiZj.transpose(), id)));
    }
  ComplexMatrix U = (S * t).exp();
  Eigen::Map<const ComplexVector> v(rho0.rho.data(), dim * dim);
  ComplexVector out = U * v;
  DensityMatrix result;
  result.n = n;
  result.rho = Eigen::Map<const ComplexMatrix>(out.data(), dim, dim);
  return result;
}

DensityMatrix random_product_state(int n, SplitMix64& rng) {
  ComplexVector psi = ComplexVector::Ones(1);
  for (int q = 0; q < n; ++q) {
    double theta = std::acos(2.0 * rng.next_uniform() - 1.0);
    double phi = 2.0 * M_PI * rng.next_uniform();
    ComplexVector site(2);
    site << std::cos(theta / 2),
        std::exp(Complex(0, phi)) * std::sin(theta / 2);
    ComplexVector next(psi.size() * 2);
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      next(2 * i) = psi(i) * site(0);
      next(2 * i + 1) = psi(i) * site(1);
    }
    psi = next;
  }
  DensityMatrix rho;
  rho.n = n;
  rho.rho = psi * psi.adjoint();
  return rho;
}
}  // namespace

TEST_CASE("basis label mapping") {
  CHECK(index_to_label(0, 2) == std::vector<int>{1, 1});
  CHECK(index_to_label(2, 2) == std::vector<int>{-1, 1});  // qubit 0 is MSB
  for (int idx = 0; idx < 16; ++idx)
    CHECK(label_to_index(index_to_label(idx, 4)) == idx);
}

TEST_CASE("gamma and omega rates") {
  auto m1 = make_model(1, ComplexMatrix::Constant(1, 1, Complex(0.7, 0)),
                       RealMatrix::Zero(1, 1));
  CHECK(gamma_rate({1}, {-1}, m1) == doctest::Approx(1.4));  // 2 gamma
  CHECK(gamma_rate({1}, {1}, m1) == 0.0);
  CHECK(omega_freq({1}, {1}, m1) == 0.0);

  auto c2 = case_c2(3);
  CHECK(omega_freq({1, 1, 1}, {-1, -1, 1}, c2) == doctest::Approx(4.0));
}

TEST_CASE("rate symmetries preserve hermiticity") {
  SplitMix64 rng(55);
  auto m = sample_ginibre(3, 77);
  for (int trial = 0; trial < 50; ++trial) {
    int a = rng.next_u64() % 8, b = rng.next_u64() % 8;
    auto la = index_to_label(a, 3), lb = index_to_label(b, 3);
    CHECK(gamma_rate(la, lb, m) == doctest::Approx(gamma_rate(lb, la, m)));
    CHECK(omega_freq(la, lb, m) == doctest::Approx(-omega_freq(lb, la, m)));
  }
}

TEST_CASE("evolve single qubit coherence decay") {
  const double gamma = 0.9, t = 0.4;
  auto m = make_model(1, ComplexMatrix::Constant(1, 1, Complex(gamma, 0)),
                      RealMatrix::Zero(1, 1));
  auto rho = evolve(product_plus_state(1), m, t);
  CHECK(rho.rho(0, 1).real() ==
        doctest::Approx(0.5 * std::exp(-2 * gamma * t)).epsilon(1e-12));
  CHECK(rho.rho(0, 0).real() == doctest::Approx(0.5));
}

TEST_CASE("evolve at t = 0 and on diagonal states") {
  auto m = case_c3(3);
  auto rho0 = product_plus_state(3);
  auto same = evolve(rho0, m, 0.0);
  CHECK((same.rho - rho0.rho).cwiseAbs().maxCoeff() == 0.0);

  DensityMatrix diag;
  diag.n = 2;
  diag.rho = ComplexMatrix::Zero(4, 4);
  diag.rho.diagonal() << 0.1, 0.2, 0.3, 0.4;
  auto m2 = case_c2(2);
  auto out = evolve(diag, m2, 1.7);
  CHECK((out.rho - diag.rho).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(evolve(rho0, m, -0.1), std::invalid_argument);
}

TEST_CASE("evolve matches superoperator exponential oracle") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + trial % 2;
    DephasingModel m = sample_ginibre(n, 3000 + trial);
    RealMatrix h = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) h(i, j) = h(j, i) = rng.next_normal();
    m = make_model(n, m.C, h);
    DensityMatrix rho0 = random_product_state(n, rng);
    double t = rng.next_uniform();
    auto fast = evolve(rho0, m, t);
    auto slow = evolve_superop(rho0, m.C, m.h, t);
    CHECK((fast.rho - slow.rho).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("evolve on a transformed model matches the oracle") {
  SplitMix64 rng(88);
  auto tm = pt_transform(case_c3(3), Bipartition::make(3, {0}));
  DensityMatrix rho0 = random_product_state(3, rng);
  auto fast = evolve(rho0, tm, 0.3);
  auto slow = evolve_superop(rho0, tm.C_tilde, tm.h_tilde, 0.3);
  CHECK((fast.rho - slow.rho).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("semigroup property") {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    DephasingModel m = sample_ginibre(3, 4000 + trial);
    DensityMatrix rho0 = random_product_state(3, rng);
    double t1 = rng.next_uniform(), t2 = rng.next_uniform();
    auto split = evolve(evolve(rho0, m, t1), m, t2);
    auto joint = evolve(rho0, m, t1 + t2);
    CHECK((split.rho - joint.rho).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("hermiticity and trace preserved; physical models stay positive") {
  SplitMix64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    DephasingModel m = sample_ginibre(3, 5000 + trial);
    DensityMatrix rho0 = random_product_state(3, rng);
    double t = 2.0 * rng.next_uniform();
    auto rho = evolve(rho0, m, t);
    CHECK((rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(rho.rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig_hermitian(rho.rho).lambda_min >= -1e-10);
  }
}

TEST_CASE("state constructors") {
  auto plus = product_plus_state(2);
  CHECK((plus.rho.array() - Complex(0.25, 0)).abs().maxCoeff() < 1e-15);

  auto bell = bell_state(0, 1, 2);
  CHECK(bell.rho(0, 0).real() == doctest::Approx(0.5));
  CHECK(bell.rho(0, 3).real() == doctest::Approx(0.5));
  CHECK(bell.rho(3, 0).real() == doctest::Approx(0.5));
  CHECK(bell.rho(3, 3).real() == doctest::Approx(0.5));
  CHECK(std::abs(bell.rho(1, 1)) == 0.0);

  // |10> and |11> superposition
  auto bar = bar_state(0, 1, 2);
  CHECK(bar.rho(2, 2).real() == doctest::Approx(0.5));
  CHECK(bar.rho(3, 3).real() == doctest::Approx(0.5));
  CHECK(bar.rho(2, 3).real() == doctest::Approx(0.5));

  CHECK_THROWS_AS(bell_state(1, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(bar_state(2, 1, 3), std::invalid_argument);
}

TEST_CASE("partial transpose of states") {
  auto part = Bipartition::make(2, {0});

  DensityMatrix diag;
  diag.n = 2;
  diag.rho = ComplexMatrix::Zero(4, 4);
  diag.rho.diagonal() << 0.4, 0.3, 0.2, 0.1;
  CHECK((partial_transpose_state(diag, part) - diag.rho).cwiseAbs().maxCoeff() ==
        0.0);

  auto bell = bell_state(0, 1, 2);
  auto pt = partial_transpose_state(bell, part);
  auto ev = eig_hermitian(pt).eigenvalues;
  CHECK(ev[0] == doctest::Approx(-0.5));
  CHECK(ev[1] == doctest::Approx(0.5));
  CHECK(ev[3] == doctest::Approx(0.5));
  CHECK(pt.trace().real() == doctest::Approx(1.0));

  DensityMatrix wrapped;
  wrapped.n = 2;
  wrapped.rho = pt;
  CHECK((partial_transpose_state(wrapped, part) - bell.rho)
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("log negativity") {
  CHECK(log_negativity(bell_state(0, 1, 2), Bipartition::make(2, {0})) ==
        doctest::Approx(1.0));
  for (const auto& part : enumerate_bipartitions(3))
    CHECK(log_negativity(product_plus_state(3), part) ==
          doctest::Approx(0.0).epsilon(1e-12));

  auto rho = evolve(product_plus_state(3), case_c3(3), 0.2);
  CHECK(log_negativity(rho, Bipartition::make(3, {0})) > 0.0);
}

TEST_CASE("negativity traces") {
  auto grid = geometric_grid(1e-3, 5.0, 40);
  auto part = Bipartition::make(3, {0});

  auto trace = negativity_trace(case_c3(3), product_plus_state(3), part, grid);
  CHECK(trace.front().second == doctest::Approx(0.0));
  double peak = 0.0;
  for (const auto& [t, en] : trace) peak = std::max(peak, en);
  CHECK(peak > 0.0);
  CHECK(trace.back().second < 1e-3);

  for (const auto& [t, en] :
       negativity_trace(case_c1(3), product_plus_state(3), part, grid))
    CHECK(en <= 1e-12);

  SplitMix64 rng(31);
  auto two = two_qubit_family(0.7, 1.0);
  auto part2 = Bipartition::make(2, {0});
  auto grid2 = geometric_grid(1e-3, 5.0, 30);
  for (int trial = 0; trial < 5; ++trial) {
    DensityMatrix rho0 = random_product_state(2, rng);
    for (const auto& [t, en] : negativity_trace(two, rho0, part2, grid2))
      CHECK(en <= 1e-9);
  }
}

TEST_CASE("real-C models never generate negativity from product states") {
  SplitMix64 rng(77);
  auto grid = geometric_grid(1e-3, 10.0, 20);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + trial % 2;
    DephasingModel g = sample_ginibre(n, 6000 + trial);
    DephasingModel m = make_model(n, g.C.real().cast<Complex>(),
                                  RealMatrix::Zero(n, n));
    DensityMatrix rho0 = random_product_state(n, rng);
    auto parts = enumerate_bipartitions(n);
    const auto& part = parts[trial % parts.size()];
    for (const auto& [t, en] : negativity_trace(m, rho0, part, grid))
      CHECK(en <= 1e-9);
  }
}

TEST_CASE("witness negativity implies transient state negativity") {
  auto grid = geometric_grid(1e-3, 1.0, 30);
  int found_entangling = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 2;
    DephasingModel m = sample_ginibre(n, 7000 + trial);
    auto parts = enumerate_bipartitions(n);
    for (const auto& part : parts) {
      double lam = witness(m, part);
      if (lam >= -entangling_threshold(m.C)) continue;
      ++found_entangling;
      double peak = 0.0;
      for (const auto& [t, en] :
           negativity_trace(m, product_plus_state(n), part, grid))
        peak = std::max(peak, en);
      CHECK(peak > 1e-9);
    }
  }
  CHECK(found_entangling > 0);
}

TEST_CASE("positivity probe") {
  auto tm = pt_transform(case_c3(3), Bipartition::make(3, {0}));
  double gamma0 = lindblad_decomposition(tm.C_tilde).back().gamma;
  REQUIRE(gamma0 < 0);

  double v4 = positivity_probe(tm, 1e-4);
  CHECK(v4 < 0);
  CHECK(v4 / 1e-4 == doctest::Approx(gamma0).epsilon(0.01));

  // first-order error shrinks linearly in dt
  double v5 = positivity_probe(tm, 1e-5);
  double err4 = std::abs(v4 / 1e-4 - gamma0);
  double err5 = std::abs(v5 / 1e-5 - gamma0);
  CHECK(err5 < err4 / 5.0);

  auto psd = pt_transform(case_c2(3), Bipartition::make(3, {0}));
  CHECK_THROWS_AS(positivity_probe(psd, 1e-4), std::invalid_argument);
}

TEST_CASE("dark coherences for the c3 dissipator") {
  // f1-orthogonal coherences survive; the theta = 2pi/3 member has them
  auto dark = dark_coherences(g_theta(2 * M_PI / 3));
  CHECK_FALSE(dark.empty());
}

TEST_CASE("geometric grid") {
  auto grid = geometric_grid(1e-3, 10.0, 60);
  CHECK(grid.size() == 60);
  CHECK(grid[0] == 0.0);
  CHECK(grid[1] == doctest::Approx(1e-3));
  CHECK(grid.back() == doctest::Approx(10.0));
  CHECK_THROWS_AS(geometric_grid(0.0, 1.0, 10), std::invalid_argument);
}
