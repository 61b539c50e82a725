#include <doctest.h>

#include <cmath>

#include "hadlab/ahp.hpp"
#include "hadlab/bounds.hpp"
#include "hadlab/complement.hpp"
#include "hadlab/scan.hpp"
#include "test_support.hpp"

using namespace hadlab;

namespace {

const ThresholdCheck& condition(const BoundReport& b, const std::string& name) {
  for (const auto& t : b.thresholds)
    if (t.name == name) return t;
  FAIL("missing condition " << name);
  throw 0;
}

}  // namespace

TEST_CASE("bound_e_inf examples") {
  const BoundReport one = bound_e_inf(SignMatrix{{1}}, 16);
  REQUIRE(one.bound1);
  CHECK(*one.bound1 == doctest::Approx(0.2).epsilon(1e-14));

  const BoundReport four = bound_e_inf(walsh(2).body(), 36);
  REQUIRE(four.bound1);
  CHECK(*four.bound1 == doctest::Approx(1.0).epsilon(1e-14));

  const BoundReport gen = bound_e_inf(2, 16, false);
  CHECK_FALSE(gen.bound1);
  CHECK_FALSE(gen.bound2);
  REQUIRE(gen.bound3);
  CHECK(*gen.bound3 == doctest::Approx(5.0 / 3.0).epsilon(1e-14));

  const BoundReport had = bound_e_inf(2, 16, true);
  REQUIRE(had.bound1);
  CHECK(*had.bound1 == doctest::Approx(2 * std::sqrt(2.0) / (std::sqrt(2.0) + 4.0)));
}

TEST_CASE("bound_e_inf absent bounds and errors") {
  // r^2 >= N: no bound2/bound3
  const BoundReport b = bound_e_inf(walsh(2).body(), 16);
  CHECK(b.bound1);
  CHECK_FALSE(b.bound2);
  CHECK_FALSE(b.bound3);
  // singular A: no c, no bound2
  const BoundReport s = bound_e_inf(SignMatrix(2, 2), 16);
  CHECK_FALSE(s.c);
  CHECK_FALSE(s.bound2);
  CHECK(s.bound3);
  CHECK_THROWS_AS(bound_e_inf(SignMatrix(3, 3), 5), Error);
  CHECK_THROWS_AS(bound_e_inf(3, 5, false), Error);
}

TEST_CASE("c for Hadamard A equals 1/sqrt(r) - 1/sqrt(N)") {
  for (int n : {8, 16, 32}) {
    const double c = polar_gap(walsh(1).body(), n);
    CHECK(c == doctest::Approx(1 / std::sqrt(2.0) - 1 / std::sqrt(static_cast<double>(n))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(polar_gap(SignMatrix(2, 2), 8), Error);
}

TEST_CASE("threshold examples") {
  const BoundReport a = ahp_thresholds(2, 4, std::nullopt, true);
  CHECK(condition(a, "hadamard").applicable);
  CHECK(condition(a, "hadamard").pass);
  CHECK(condition(a, "hadamard").threshold == 2.0);

  const BoundReport b = ahp_thresholds(4, 36, walsh(2).body());
  CHECK(b.a_is_hadamard);
  CHECK_FALSE(condition(b, "hadamard").pass);
  CHECK(condition(b, "hadamard").critical_n == 40);
  CHECK(condition(ahp_thresholds(4, 40, walsh(2).body()), "hadamard").pass);

  CHECK_FALSE(condition(ahp_thresholds(1, 4), "generic").pass);
  CHECK(condition(ahp_thresholds(1, 4), "generic").threshold == doctest::Approx(4.0));
  CHECK(condition(ahp_thresholds(1, 8), "generic").pass);
  CHECK(condition(ahp_thresholds(1, 8), "generic").critical_n == 8);

  // without A the c-based condition is not applicable and has no verdict
  const auto& cb = condition(ahp_thresholds(3, 64), "c-based");
  CHECK_FALSE(cb.applicable);
  CHECK_FALSE(cb.pass);
  CHECK_FALSE(cb.critical_n);
}

TEST_CASE("c-based condition with a concrete A") {
  const SignMatrix a3{{1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
  const BoundReport rep = ahp_thresholds(3, 64, a3);
  const auto& cb = condition(rep, "c-based");
  CHECK(cb.applicable);
  REQUIRE(rep.c);
  const double x = 3 * *rep.c;
  const double rhs = 9.0 / 4.0 * std::pow(x + std::sqrt(x * x + 4), 2);
  CHECK(cb.threshold == doctest::Approx(rhs));
  CHECK(cb.pass == (64 > rhs));
  REQUIRE(cb.critical_n);
  CHECK(*cb.critical_n % 4 == 0);
  // the critical N satisfies the condition with c recomputed at that N
  const auto at = ahp_thresholds(3, *cb.critical_n, a3);
  CHECK(condition(at, "c-based").pass);
  const auto before = ahp_thresholds(3, *cb.critical_n - 4, a3);
  CHECK_FALSE(condition(before, "c-based").pass);
}

TEST_CASE("cubic remark") {
  for (auto [r, n] : {std::pair{2, 16}, std::pair{2, 8}, std::pair{1, 8}, std::pair{3, 64}}) {
    const double v = hadamard_case_cubic_remark(r, n);
    const double b1 = r * std::sqrt(static_cast<double>(r)) / (std::sqrt(static_cast<double>(r)) + std::sqrt(static_cast<double>(n)));
    CHECK(v >= b1);
    // it is the c-based bound for a Hadamard A
    const double c = 1 / std::sqrt(static_cast<double>(r)) - 1 / std::sqrt(static_cast<double>(n));
    CHECK(v == doctest::Approx(r * r * c * std::sqrt(static_cast<double>(n)) / (n - r * r)));
  }
  CHECK(hadamard_case_cubic_remark(1, 8) < 1.0);
  CHECK(hadamard_case_cubic_remark(2, 8) > 2 * std::sqrt(2.0) / (std::sqrt(2.0) + std::sqrt(8.0)));
  CHECK_THROWS_AS(hadamard_case_cubic_remark(3, 9), Error);
}

TEST_CASE("bounds decrease in N") {
  for (int r = 1; r <= 4; ++r) {
    double prev1 = 1e300, prev3 = 1e300;
    for (int n = r * r + 4; n <= 400; n += 4) {
      const BoundReport b = bound_e_inf(r, n, true);
      CHECK(*b.bound1 < prev1);
      CHECK(*b.bound3 < prev3);
      prev1 = *b.bound1;
      prev3 = *b.bound3;
    }
  }
  const SignMatrix a3{{1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
  double prev2 = 1e300;
  for (int n = 12; n <= 400; n += 4) {
    const BoundReport b = bound_e_inf(a3, n);
    REQUIRE(b.bound2);
    CHECK(*b.bound2 < prev2);
    prev2 = *b.bound2;
  }
}

TEST_CASE("soundness sweep over catalog splits with r <= 3") {
  ScanOptions opt;
  const std::pair<HadamardMatrix, std::optional<std::uint64_t>> cases[] = {
      {walsh(3), std::nullopt}, {paley12(), std::nullopt}, {walsh(4), 3000}, {walsh(5), 1000}};
  for (const auto& [h, limit] : cases)
    for (int r = 1; r <= 3; ++r) {
      opt.limit = limit;
      const ScanSummary s = scan(h, r, opt);
      CHECK(s.checks.bound_violations == 0);
      CHECK(s.checks.threshold_violations == 0);
      CHECK(s.checks.einf_violations == 0);
    }
}

TEST_CASE("E_inf < 1 forces sgn(U) = D") {
  std::mt19937_64 rng(61);
  const HadamardMatrix h = walsh(4);
  for (int t = 0; t < 200; ++t) {
    const int r = 1 + t % 4;
    const PartitionedHadamard p(h, testsupport::random_subset(rng, 16, r), testsupport::random_subset(rng, 16, r));
    if (check_applicability(p.a(), 16).status != Applicability::Applicable) continue;
    const ComplementFactors f = complement_polar(p);
    if (max_abs(f.E) >= 1.0) continue;
    for (int i = 0; i < p.d(); ++i)
      for (int j = 0; j < p.d(); ++j) CHECK((f.U(i, j) > 0) == (p.d_block()(i, j) > 0));
  }
}

TEST_CASE("bound report json") {
  const Json j = to_json(bound_report(walsh(1).body(), 16, 0.1));
  CHECK(j["r"] == 2);
  CHECK(j["cComputedAtN"] == 16);
  CHECK(j["thresholds"].size() == 3);
  CHECK(j["thresholds"][0]["condition"] == "hadamard");
  CHECK(j["actualEinf"] == 0.1);
  CHECK(j["bound2"].is_number());
}
