#include <doctest.h>

#include <map>
#include <random>
#include <string>

#include "hadlab/matcore.hpp"
#include "test_support.hpp"

using namespace hadlab;

namespace {

const char* kW8Text =
    "++++++++\n"
    "+-+-+-+-\n"
    "++--++--\n"
    "+--++--+\n"
    "++++----\n"
    "+-+--+-+\n"
    "++----++\n"
    "+--+-++-\n";

const char* kH12Text =
    "+-----------\n"
    "++-+---+++-+\n"
    "+++-+---+++-\n"
    "+-++-+---+++\n"
    "++-++-+---++\n"
    "+++-++-+---+\n"
    "++++-++-+---\n"
    "+-+++-++-+--\n"
    "+--+++-++-+-\n"
    "+---+++-++-+\n"
    "++---+++-++-\n"
    "+-+---+++-++\n";

}  // namespace

TEST_CASE("walsh small orders") {
  CHECK(walsh(0).body() == SignMatrix{{1}});
  CHECK(walsh(1).body() == SignMatrix{{1, 1}, {1, -1}});
  CHECK(walsh(2).body() == SignMatrix{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}});
  const HadamardMatrix w8 = walsh(3);
  CHECK(w8.body() == parse_sign_matrix(kW8Text));
  CHECK(w8(7, 7) == -1);
}

TEST_CASE("walsh matches popcount formula and is Hadamard up to n=8") {
  for (int n = 0; n <= 8; ++n) {
    const HadamardMatrix w = walsh(n);
    CHECK(w.body() == testsupport::walsh_by_popcount(n));
    CHECK(is_hadamard(w.body()));
  }
}

TEST_CASE("walsh respects max order") {
  CHECK_THROWS_AS(walsh(13), Error);
  CHECK_NOTHROW(walsh(13, 8192));
  try {
    walsh(5, 16);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resource);
  }
  CHECK_THROWS_AS(walsh(-1), Error);
}

TEST_CASE("paley12 is the displayed matrix") {
  const HadamardMatrix h = paley12();
  CHECK(h.order() == 12);
  CHECK(h(0, 0) == 1);
  CHECK(h(0, 1) == -1);
  CHECK(serialize_sign_matrix(h.body()) == kH12Text);
  CHECK(is_hadamard(h.body()));
}

TEST_CASE("is_hadamard rejects") {
  CHECK_FALSE(is_hadamard(SignMatrix(2, 2)));
  CHECK_FALSE(is_hadamard(SignMatrix(2, 3)));
  SignMatrix w = walsh(3).body();
  w.negate(3, 4);
  CHECK_FALSE(is_hadamard(w));
  CHECK_THROWS_AS(HadamardMatrix{w}, Error);
}

TEST_CASE("kronecker") {
  const SignMatrix w2 = walsh(1).body();
  const SignMatrix w4 = walsh(2).body();
  CHECK(kronecker(w2, w2) == w4);
  CHECK(kronecker(SignMatrix{{1}}, w4) == w4);
  CHECK(kronecker(w2, w4) == walsh(3).body());
  CHECK_THROWS_AS(kronecker(walsh(6).body(), walsh(6).body(), 1024), Error);

  const SignMatrix r{{1, -1, 1}};
  const SignMatrix c{{1}, {-1}};
  const SignMatrix k = kronecker(r, c);
  CHECK(k.rows() == 2);
  CHECK(k.cols() == 3);
  CHECK(k(1, 1) == 1);
  CHECK(k(1, 0) == -1);
}

TEST_CASE("kronecker is associative") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto a = testsupport::random_sign_matrix(rng, 1 + t % 3, 1 + t % 2);
    const auto b = testsupport::random_sign_matrix(rng, 2, 1 + t % 3);
    const auto c = testsupport::random_sign_matrix(rng, 1 + t % 2, 2);
    CHECK(kronecker(kronecker(a, b), c) == kronecker(a, kronecker(b, c)));
  }
}

TEST_CASE("block_constant") {
  const RealMatrix ones = block_constant(RealMatrix::Constant(1, 1, 1.0), {3});
  CHECK(ones.rows() == 3);
  CHECK(ones.isApprox(RealMatrix::Ones(3, 3)));

  const RealMatrix bd = block_constant(RealMatrix::Identity(2, 2), {2, 2});
  RealMatrix expected = RealMatrix::Zero(4, 4);
  expected.topLeftCorner(2, 2).setOnes();
  expected.bottomRightCorner(2, 2).setOnes();
  CHECK(bd == expected);

  const double s = 2.0 / (std::sqrt(2.0) + std::sqrt(8.0));
  const RealMatrix s2 = block_constant(s * RealMatrix::Identity(2, 2), {3, 3});
  CHECK(s2.rows() == 6);
  CHECK(s2(0, 2) == doctest::Approx(0.4714).epsilon(1e-4));
  CHECK(s2(4, 5) == doctest::Approx(0.4714).epsilon(1e-4));
  CHECK(s2(0, 4) == 0.0);

  BlockConstantSpec rect{RealMatrix::Constant(1, 2, 0.0), {2}, {1, 3}};
  rect.block_values(0, 1) = 5.0;
  const RealMatrix m = block_constant(rect);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 4);
  CHECK(m(1, 0) == 0.0);
  CHECK(m(1, 3) == 5.0);

  CHECK_THROWS_AS(block_constant(BlockConstantSpec{RealMatrix::Ones(2, 2), {1}, {1, 1}}), Error);
  CHECK_THROWS_AS(block_constant(BlockConstantSpec{RealMatrix::Ones(1, 1), {-1}, {1}}), Error);
  CHECK(block_constant(BlockConstantSpec{RealMatrix::Ones(1, 1), {0}, {2}}).rows() == 0);
}

TEST_CASE("permute_negate") {
  const SignMatrix w4 = walsh(2).body();
  const std::vector<int> id{0, 1, 2, 3};
  CHECK(permute_negate(w4, id, id) == w4);

  const std::vector<int> neg{1, -1, 1, 1};
  const SignMatrix n = permute_negate(w4, id, id, neg);
  CHECK(is_hadamard(n));
  CHECK(n(1, 1) == 1);

  CHECK_THROWS_AS(permute_negate(w4, std::vector<int>{0, 0, 1, 2}, id), Error);
  CHECK_THROWS_AS(permute_negate(w4, id, std::vector<int>{0, 1, 2}), Error);
  CHECK_THROWS_AS(permute_negate(w4, id, id, std::vector<int>{1, 0, 1, 1}), Error);
}

TEST_CASE("column reorder of W_8 exposes the r=3 pattern") {
  const std::vector<int> perm{0, 1, 2, 4, 6, 5, 3, 7};  // 1,2,3,5,7,6,4,8
  const std::vector<int> id{0, 1, 2, 3, 4, 5, 6, 7};
  const SignMatrix p = permute_negate(walsh(3).body(), id, perm);
  const SignMatrix top = p.submatrix(std::vector<int>{0, 1, 2}, std::vector<int>{0, 1, 2});
  CHECK(top == SignMatrix{{1, 1, 1}, {1, -1, 1}, {1, 1, -1}});
  // Remaining five columns on the first three rows: B_(3) has the four
  // sign columns (+,+,+), (+,+,-), (+,-,+), (+,-,-) with multiplicities 1,1,1,2
  // (block sizes N/4-1, N/4-1, N/4-1, N/4 at N=8).
  std::map<std::vector<int>, int> counts;
  for (int j = 3; j < 8; ++j) counts[{p(0, j), p(1, j), p(2, j)}]++;
  CHECK(counts[{1, 1, 1}] == 1);
  CHECK(counts[{1, 1, -1}] == 1);
  CHECK(counts[{1, -1, 1}] == 1);
  CHECK(counts[{1, -1, -1}] == 2);
}

TEST_CASE("equivalence moves preserve Hadamard") {
  std::mt19937_64 rng(2024);
  std::bernoulli_distribution coin(0.5);
  const SignMatrix bodies[] = {walsh(3).body(), paley12().body()};
  int moves = 0;
  for (const auto& h : bodies) {
    const int n = h.rows();
    for (int t = 0; t < 600; ++t) {
      std::vector<int> rs(static_cast<std::size_t>(n)), cs(static_cast<std::size_t>(n));
      for (auto& x : rs) x = coin(rng) ? 1 : -1;
      for (auto& x : cs) x = coin(rng) ? 1 : -1;
      const SignMatrix m = permute_negate(h, testsupport::random_perm(rng, n), testsupport::random_perm(rng, n), rs, cs);
      CHECK(is_hadamard(m));
      ++moves;
    }
  }
  CHECK(moves >= 1000);
}

TEST_CASE("normalize") {
  std::mt19937_64 rng(5);
  const SignMatrix h = paley12().body();
  std::vector<int> rs(12, 1), cs(12, 1);
  rs[3] = -1;
  cs[0] = -1;
  cs[7] = -1;
  const SignMatrix m = normalize(permute_negate(h, testsupport::random_perm(rng, 12), testsupport::random_perm(rng, 12), rs, cs));
  CHECK(is_hadamard(m));
  for (int k = 0; k < 12; ++k) {
    CHECK(m(0, k) == 1);
    CHECK(m(k, 0) == 1);
  }
}

TEST_CASE("parse and serialize") {
  CHECK(parse_sign_matrix("++\n+-") == walsh(1).body());
  CHECK(parse_sign_matrix("+ +\r\n+ -\n\n") == walsh(1).body());
  CHECK(serialize_sign_matrix(walsh(1).body()) == "++\n+-\n");
  CHECK(serialize_sign_matrix(paley12().body()) == kH12Text);

  try {
    parse_sign_matrix("+-\n-");
    FAIL("expected ragged rows error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
  }
  CHECK_THROWS_AS(parse_sign_matrix("+x\n++"), Error);
  CHECK_THROWS_AS(parse_sign_matrix("1,-1"), Error);
}

TEST_CASE("parse . serialize round trip up to 64x64") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> dim(1, 64);
  for (int t = 0; t < 200; ++t) {
    const auto s = testsupport::random_sign_matrix(rng, dim(rng), dim(rng));
    CHECK(parse_sign_matrix(serialize_sign_matrix(s)) == s);
  }
}

TEST_CASE("sign matrix construction checks") {
  const std::vector<int> bad{1, 0, 1, 1};
  CHECK_THROWS_AS(SignMatrix(2, 2, bad), Error);
  const std::vector<int> short_v{1, 1, 1};
  CHECK_THROWS_AS(SignMatrix(2, 2, short_v), Error);
  SignMatrix s(2, 2);
  CHECK_THROWS_AS(s.set(0, 0, 2), Error);
  CHECK_THROWS_AS(s.at(2, 0), Error);
  CHECK(s.transpose() == s);
}

TEST_CASE("partitioned blocks") {
  const PartitionedHadamard p(walsh(3), {4, 0, 1, 2}, {0, 1, 2, 4});
  CHECK(p.rows_a() == IndexList{0, 1, 2, 4});
  CHECK(p.rows_d() == IndexList{3, 5, 6, 7});
  CHECK(p.a() == SignMatrix{{1, 1, 1, 1}, {1, -1, 1, 1}, {1, 1, -1, 1}, {1, 1, 1, -1}});
  CHECK(p.d_block() == SignMatrix{{1, -1, -1, 1}, {-1, 1, -1, 1}, {-1, -1, 1, 1}, {1, 1, 1, -1}});
  CHECK(p.b().rows() == 4);
  CHECK(p.c().cols() == 4);

  CHECK_THROWS_AS(PartitionedHadamard(walsh(2), {0, 0}, {1, 2}), Error);
  CHECK_THROWS_AS(PartitionedHadamard(walsh(2), {0, 4}, {1, 2}), Error);
  CHECK_THROWS_AS(PartitionedHadamard(walsh(2), {0}, {1, 2}), Error);
  CHECK_THROWS_AS(PartitionedHadamard(walsh(2), {}, {}), Error);
  CHECK_THROWS_AS(PartitionedHadamard(walsh(1), {0, 1}, {0, 1}), Error);
}

TEST_CASE("index lists") {
  CHECK(parse_index_list("1,2,3,5") == IndexList{0, 1, 2, 4});
  CHECK(parse_index_list(" 6 , 1") == IndexList{5, 0});
  CHECK(format_index_list({0, 1, 2, 4}) == "1,2,3,5");
  CHECK_THROWS_AS(parse_index_list("0,1"), Error);
  CHECK_THROWS_AS(parse_index_list("a"), Error);
  CHECK_THROWS_AS(parse_index_list("1,,2"), Error);
  CHECK(complement_indices({1, 3}, 5) == IndexList{0, 2, 4});
}
