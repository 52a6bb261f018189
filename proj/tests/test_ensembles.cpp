#include <cmath>

#include "doctest.h"
#include "qdeph/ensembles.hpp"
#include "qdeph/pt.hpp"
#include "qdeph/rng.hpp"
#include "qdeph/spectral.hpp"

using namespace qdeph;

TEST_CASE("sample records are self-consistent") {
  for (int64_t i = 0; i < 50; ++i) {
    EnsembleRecord rec = sample_record(3, 11, i);
    DephasingModel m = sample_ginibre(3, rec.seed);
    CHECK(rec.rank_proxy == doctest::Approx(rank_proxy(m)).epsilon(1e-12));
    CHECK(rec.entangling == (rec.lambda_min < -entangling_threshold(m.C)));
    CHECK(m.physical);
  }
}

TEST_CASE("fig2 scan shape at small scale") {
  ScanConfig config{3, 20000, 1, 0.02, 0};
  Fig2Result result = fig2_scan(config);
  REQUIRE(result.records.size() == 20000);
  REQUIRE(result.bins.size() == 50);

  CHECK(result.bins.front().fraction == 0.0);
  CHECK(result.bins.back().fraction == 0.0);
  double peak = 0.0;
  for (const Fig2Bin& bin : result.bins) peak = std::max(peak, bin.fraction);
  CHECK(peak > 0.1);
}

TEST_CASE("fig2 scan deterministic across thread counts") {
  ScanConfig one{3, 500, 9, 0.02, 1};
  ScanConfig many{3, 500, 9, 0.02, 8};
  Fig2Result a = fig2_scan(one);
  Fig2Result b = fig2_scan(many);
  for (size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].lambda_min == b.records[i].lambda_min);
    CHECK(a.records[i].seed == b.records[i].seed);
  }
}

TEST_CASE("fig3 scan") {
  ScanConfig config{4, 2000, 2, 0.02, 0};
  auto rows = fig3_scan(config);
  REQUIRE(rows.size() == 2000);
  // entangling samples exist away from rank 1
  int entangling_high_rank = 0;
  for (const auto& [proxy, lam] : rows) {
    CHECK(proxy > 0.0);
    CHECK(proxy <= 1.0 + 1e-12);
    if (lam < -1e-10 && proxy < 0.9) ++entangling_high_rank;
  }
  CHECK(entangling_high_rank > 0);
}

TEST_CASE("entangling fraction grows with system size") {
  auto points = fraction_vs_n(3, 12, 400, 5);
  REQUIRE(points.size() == 10);
  CHECK(points.front().f > 0.0);
  CHECK(points.front().f < 1.0);
  CHECK(points.back().f > points.front().f);
}

TEST_CASE("fraction_vs_n validates range") {
  CHECK_THROWS_AS(fraction_vs_n(2, 5, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(fraction_vs_n(10, 60, 10, 1), std::invalid_argument);
}

TEST_CASE("per-sample seeds derived from master seed") {
  EnsembleRecord a = sample_record(3, 7, 123);
  CHECK(a.seed == derive_seed(7, 123));
  EnsembleRecord b = sample_record(3, 8, 123);
  CHECK(a.seed != b.seed);
}
