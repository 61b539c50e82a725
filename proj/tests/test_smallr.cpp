#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hadlab/ahp.hpp"
#include "hadlab/complement.hpp"
#include "hadlab/smallr.hpp"
#include "test_support.hpp"

using namespace hadlab;
using testsupport::max_diff;

namespace {

// Eigenvalues of the oracle T for D of the realization.
std::vector<double> oracle_t_spectrum(const PartitionedHadamard& p) {
  return testsupport::jacobi_eig(testsupport::reference_polar(p.d_block().to_real()).T).values;
}

}  // namespace

TEST_CASE("r=1 closed form") {
  const SmallRForm two = closed_form_r1(2);
  CHECK(two.E.rows() == 1);
  CHECK(two.E(0, 0) == doctest::Approx(1 / (1 + std::sqrt(2.0))).epsilon(1e-15));
  CHECK(two.S(0, 0) == doctest::Approx(1 / (1 + std::sqrt(2.0))).epsilon(1e-15));
  CHECK(max_diff(closed_form_r1(4).E, RealMatrix::Constant(3, 3, 1.0 / 3.0)) < 1e-15);
  const SmallRForm f16 = closed_form_r1(16);
  CHECK(max_diff(f16.E, RealMatrix::Constant(15, 15, 0.2)) < 1e-15);
  CHECK(f16.block_sizes == std::vector<int>{15});
  CHECK_THROWS_AS(closed_form_r1(6), Error);
  CHECK_THROWS_AS(closed_form_r1(3), Error);
}

TEST_CASE("r=2 closed form") {
  const SmallRForm f = closed_form_r2(4);
  RealMatrix e(2, 2);
  e << 1, 1, 1, -1;
  CHECK(max_diff(f.E, e / (1 + std::sqrt(2.0))) < 1e-15);
  CHECK(max_diff(f.S, 2 / (2 + std::sqrt(2.0)) * RealMatrix::Identity(2, 2)) < 1e-15);
  CHECK_THROWS_AS(closed_form_r2(2), Error);
  CHECK_THROWS_AS(closed_form_r2(10), Error);

  // S_(2) spectrum: sqrt(N) - sqrt(2) twice, zeros elsewhere
  for (int n : {8, 16, 24}) {
    const auto ev = testsupport::jacobi_eig(closed_form_r2(n).S).values;
    const double top = std::sqrt(static_cast<double>(n)) - std::sqrt(2.0);
    CHECK(ev.size() == static_cast<std::size_t>(n - 2));
    CHECK(ev[ev.size() - 1] == doctest::Approx(top).epsilon(1e-12));
    CHECK(ev[ev.size() - 2] == doctest::Approx(top).epsilon(1e-12));
    CHECK(std::abs(ev[ev.size() - 3]) < 1e-12);
    CHECK(std::abs(ev[0]) < 1e-12);
  }
}

TEST_CASE("r=3 closed form scalars") {
  const SmallRForm f = closed_form_r3(16);
  CHECK(f.scalars.at("x") == doctest::Approx(17.0 / 9.0).epsilon(1e-15));
  for (int n = 8; n <= 256; n += 4) {
    const SmallRForm g = closed_form_r3(n);
    const double x = g.scalars.at("x"), y = g.scalars.at("y");
    CHECK(3 > x);
    CHECK(x > y);
    CHECK(y > 1);
    CHECK(max_abs(g.E) == doctest::Approx(3 / (std::sqrt(static_cast<double>(n)) + 1)).epsilon(1e-14));
    CHECK((max_abs(g.E) < 1) == (n > 4));
  }
  CHECK(f.block_sizes == std::vector<int>{3, 3, 3, 4});
  CHECK_THROWS_AS(closed_form_r3(4), Error);
  CHECK_THROWS_AS(closed_form_r3(14), Error);
}

TEST_CASE("small patterns") {
  CHECK(small_pattern(1) == SignMatrix{{1}});
  CHECK(small_pattern(2) == walsh(1).body());
  CHECK(small_pattern(3) == SignMatrix{{1, 1, 1}, {1, -1, 1}, {1, 1, -1}});
  CHECK_THROWS_AS(small_pattern(4), Error);
  CHECK_THROWS_AS(closed_form(4, 16), Error);
}

TEST_CASE("closed forms agree with complement_polar on catalog realizations") {
  for (int r = 1; r <= 3; ++r)
    for (const HadamardMatrix& h : {walsh(2), walsh(3), walsh(4), paley12()}) {
      const int n = h.order();
      if (r == 3 && n < 8) continue;
      const auto real = realize_pattern(h, r);
      REQUIRE_MESSAGE(real.has_value(), "no type-(" << r << ") realization at N=" << n);
      CHECK(is_hadamard(real->arranged));
      const PartitionedHadamard p = real->split();
      CHECK(p.a() == small_pattern(r));
      const ComplementFactors f = complement_polar(p);
      const SmallRForm c = closed_form(r, n);
      CHECK(max_diff(c.E, f.E) < 1e-10);
      CHECK(max_diff(c.S, f.S) < 1e-10);
      // against the reference oracle: U = (D - E)/sqrt(N), T = sqrt(N) I - S
      const auto ref = testsupport::reference_polar(p.d_block().to_real());
      const double sn = std::sqrt(static_cast<double>(n));
      CHECK(max_diff((p.d_block().to_real() - c.E) / sn, ref.U) < 1e-10);
      CHECK(max_diff(sn * RealMatrix::Identity(n - r, n - r) - c.S, ref.T) < 1e-10);
      CHECK(ahp_check(p.d_block()).status == AhpStatus::AHP);
    }
}

TEST_CASE("the column reorder of W_8 is a type-(3) realization") {
  const std::vector<int> perm{0, 1, 2, 4, 6, 5, 3, 7};
  const SignMatrix arranged = permute_negate(walsh(3).body(), perm, perm);
  const PartitionedHadamard p(HadamardMatrix{arranged}, {0, 1, 2}, {0, 1, 2});
  CHECK(p.a() == small_pattern(3));
  const SmallRForm c = closed_form_r3(8);
  CHECK(c.block_sizes == std::vector<int>{1, 1, 1, 2});
  const ComplementFactors f = complement_polar(p);
  CHECK(max_diff(c.E, f.E) < 1e-10);
  CHECK(max_diff(c.S, f.S) < 1e-10);
  CHECK(max_abs(c.E) == doctest::Approx(3 / (std::sqrt(8.0) + 1)).epsilon(1e-12));
  CHECK(ahp_check(p.d_block()).status == AhpStatus::AHP);
}

TEST_CASE("T spectra for r = 1, 2") {
  {
    const auto s = spectrum_T(1, 4);
    REQUIRE(s.size() == 3);
    CHECK(s[0] == doctest::Approx(1.0));
    CHECK(s[1] == doctest::Approx(2.0));
    CHECK(s[2] == doctest::Approx(2.0));
    double prod = 1.0;
    for (double v : s) prod *= v;
    CHECK(prod == doctest::Approx(4.0));
  }
  {
    const auto s = spectrum_T(2, 4);
    REQUIRE(s.size() == 2);
    CHECK(s[0] * s[1] == doctest::Approx(2.0));
  }
  {
    const auto s = spectrum_T(1, 16);
    REQUIRE(s.size() == 15);
    CHECK(std::count_if(s.begin(), s.end(), [](double v) { return std::abs(v - 4.0) < 1e-12; }) == 14);
    const auto real = realize_pattern(walsh(4), 1);
    REQUIRE(real);
    CHECK(testsupport::reference_polar(real->split().d_block().to_real()).T.trace() == doctest::Approx(57.0));
  }
  for (int r = 1; r <= 2; ++r)
    for (const HadamardMatrix& h : {walsh(2), walsh(3), walsh(4), paley12()}) {
      const auto real = realize_pattern(h, r);
      REQUIRE(real);
      const auto ev = oracle_t_spectrum(real->split());
      const auto st = spectrum_T(r, h.order());
      REQUIRE(ev.size() == st.size());
      double prod = 1.0;
      for (std::size_t k = 0; k < ev.size(); ++k) {
        CHECK(std::abs(ev[k] - st[k]) < 1e-8);
        prod *= st[k];
      }
      CHECK(prod == doctest::Approx(abs_det(real->split().d_block().to_real())).epsilon(1e-8));
    }
  CHECK_THROWS_AS(spectrum_T(3, 8), Error);
}

TEST_CASE("r=3 realization: oracle spectrum and determinant") {
  const auto real = realize_pattern(walsh(3), 3);
  REQUIRE(real);
  const auto ev = oracle_t_spectrum(real->split());
  const double s8 = std::sqrt(8.0);
  const std::vector<double> expected{1.0, 2.0, 2.0, s8, s8};
  REQUIRE(ev.size() == expected.size());
  for (std::size_t k = 0; k < ev.size(); ++k) CHECK(ev[k] == doctest::Approx(expected[k]).epsilon(1e-10));
  CHECK(abs_det(real->split().d_block().to_real()) == doctest::Approx(32.0).epsilon(1e-10));
}

TEST_CASE("realize_pattern gives nullopt when no arrangement exists") {
  CHECK_FALSE(realize_pattern(walsh(1), 2).has_value());
  CHECK_FALSE(realize_pattern(walsh(2), 3).has_value());
  CHECK(realize_pattern(walsh(1), 1).has_value());
}

TEST_CASE("small-r json") {
  const Json j = to_json(closed_form_r3(16));
  CHECK(j["r"] == 3);
  CHECK(j["blockSizes"].size() == 4);
  CHECK(j["scalars"].contains("t"));
}
