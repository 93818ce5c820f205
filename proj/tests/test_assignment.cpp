#include <catch2/catch_amalgamated.hpp>

#include "conoma/assignment.hpp"
#include "conoma/channel.hpp"
#include "conoma/rng.hpp"
#include "oracles.hpp"

using namespace conoma;
using Catch::Matchers::WithinRel;

namespace {

double value_of(const Matrix& u, const Pairing& p) {
  double s = 0.0;
  for (int i = 0; i < p.size(); ++i) s += u(i, p.strong_of(i));
  return s;
}

Matrix random_matrix(Rng& rng, int k, double lo = 0.0, double hi = 1.0) {
  Matrix u(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) u(i, j) = lo + (hi - lo) * rng.next_double();
  return u;
}

}  // namespace

TEST_CASE("two-by-two example") {
  Matrix u(2, 2);
  u(0, 0) = 5;
  u(0, 1) = 1;
  u(1, 0) = 2;
  u(1, 1) = 3;
  const Pairing p = hungarian_solve(u);
  CHECK(p.strong_of(0) == 0);
  CHECK(p.strong_of(1) == 1);
  CHECK(value_of(u, p) == 8.0);
  CHECK(value_of(u, p) == oracle::brute_force_assignment(u));
}

TEST_CASE("diagonal-dominant matrix picks the identity") {
  Matrix u(3, 3, 1.0);
  for (int i = 0; i < 3; ++i) u(i, i) = 10.0 + i;
  const Pairing p = hungarian_solve(u);
  for (int i = 0; i < 3; ++i) CHECK(p.strong_of(i) == i);
}

TEST_CASE("hungarian matches factorial enumeration") {
  Rng rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const int k = 1 + int(rng.next_u64() % 6);
    const Matrix u = random_matrix(rng, k);
    const Pairing p = hungarian_solve(u);
    CHECK(value_of(u, p) == oracle::brute_force_assignment(u));
  }
}

TEST_CASE("result is always a valid permutation") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const int k = 1 + int(rng.next_u64() % 8);
    const Pairing p = hungarian_solve(random_matrix(rng, k));  // ctor validates
    CHECK(p.size() == k);
  }
}

TEST_CASE("constant shifts leave the argmax unchanged") {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const int k = 2 + int(rng.next_u64() % 4);
    Matrix u = random_matrix(rng, k);
    const Pairing p1 = hungarian_solve(u);
    Matrix shifted = u;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) shifted(i, j) += 3.25;
    const Pairing p2 = hungarian_solve(shifted);
    CHECK(p1.map() == p2.map());
  }
}

TEST_CASE("ties resolve to the lexicographically smallest permutation") {
  Matrix all_equal(3, 3, 4.0);
  const Pairing p = hungarian_solve(all_equal);
  CHECK(p.map() == std::vector<int>{0, 1, 2});

  // Two optimal assignments with integer entries: (0,1)+(1,0) and
  // (0,0)+(1,1) both total 6; the smaller sigma(0) must win.
  Matrix tie(2, 2);
  tie(0, 0) = 4;
  tie(0, 1) = 2;
  tie(1, 0) = 4;
  tie(1, 1) = 2;
  const Pairing q = hungarian_solve(tie);
  CHECK(q.map() == std::vector<int>{0, 1});
}

TEST_CASE("invalid matrices are rejected") {
  Matrix rect(2, 3, 1.0);
  CHECK_THROWS_AS(hungarian_solve(rect), std::invalid_argument);
  Matrix bad(2, 2, 1.0);
  bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(hungarian_solve(bad), std::invalid_argument);
  bad(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(hungarian_solve(bad), std::invalid_argument);
}

namespace {

PairedSystem sampled_system(std::uint64_t seed, int users) {
  ScenarioConfig cfg;
  cfg.user_count = users;
  cfg.blockage_rate = 0.0;
  const auto [scn, ch] = sample_scenario(cfg, seed);
  return make_paired_system(scn, ch, PhyConstants{});
}

}  // namespace

TEST_CASE("utility matrix: zero powers give a zero matrix") {
  const PairedSystem sys = sampled_system(3, 6);
  const std::vector<double> zero(3, 0.0);
  const Matrix u = build_utility_matrix(sys, zero, zero, LinkSelection{0, 0, 0}, WeightSet::ones(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(u(i, j) == 0.0);
}

TEST_CASE("utility matrix: single pair equals the pair objective") {
  const PairedSystem sys = sampled_system(4, 2);
  const std::vector<double> pw{0.006}, ps{0.004};
  const WeightSet w = WeightSet::ones(1);
  const Matrix u = build_utility_matrix(sys, pw, ps, LinkSelection{0}, w);
  CHECK_THAT(u(0, 0),
             WithinRel(weighted_objective(sys, Pairing::identity(1), LinkSelection{0}, pw, ps, w), 1e-12));
}

TEST_CASE("utility matrix entries match independent recomputation") {
  const PairedSystem sys = sampled_system(5, 6);
  WeightSet w = WeightSet::ones(3);
  w.weak = {2.0, 0.5, 1.0};
  w.strong = {1.0, 1.5, 0.25};
  const LinkSelection x{1, 0, 1};
  const std::vector<double> pw{0.002, 0.001, 0.0015}, ps{0.001, 0.0005, 0.002};
  const Matrix u = build_utility_matrix(sys, pw, ps, x, w);
  const double bv = sys.phy.vlc_bandwidth;
  const int k = 3, n_f = 2;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      double expected = w.strong[j] * bv / (2 * k) * std::log2(1.0 + sys.psi_strong[j] * ps[j]);
      if (x[i] == 0) {
        expected += w.weak[i] * bv / (2 * k) *
                    std::log2(1.0 + sys.psi_weak[i] * pw[i] / (1.0 + sys.psi_weak[i] * ps[j]));
      } else {
        const double share = sys.rf_bandwidth / n_f;
        const double rf = share / 2.0 *
                          std::log2(1.0 + sys.rf_gain(i, j) * sys.relay_power[j] / (share * sys.rf_noise_psd));
        const double decode = bv / (2 * k) *
                              std::log2(1.0 + sys.psi_strong[j] * pw[i] / (1.0 + sys.psi_strong[j] * ps[j]));
        expected += w.weak[i] * std::min(rf, decode);
      }
      CHECK_THAT(u(i, j), WithinRel(expected, 1e-12));
    }
  }
}
