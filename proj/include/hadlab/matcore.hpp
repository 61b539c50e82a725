#pragma once

// Matrix value types, the Hadamard catalog, block-constant builders,
// equivalence moves and the sign-matrix text format.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hadlab/error.hpp"
#include "hadlab/tolerances.hpp"

namespace hadlab {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using IndexList = std::vector<int>;

/// Rectangular matrix whose entries are exactly -1 or +1, stored row-major.
class SignMatrix {
 public:
  SignMatrix() = default;
  /// rows x cols matrix filled with +1.
  SignMatrix(int rows, int cols);
  /// Validates that `entries` has rows*cols values, each -1 or +1.
  SignMatrix(int rows, int cols, std::span<const int> entries);
  SignMatrix(std::initializer_list<std::initializer_list<int>> rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  int operator()(int i, int j) const noexcept { return data_[index(i, j)]; }
  int at(int i, int j) const;
  void set(int i, int j, int sign);
  void negate(int i, int j) { data_[index(i, j)] = static_cast<std::int8_t>(-data_[index(i, j)]); }

  SignMatrix transpose() const;
  SignMatrix submatrix(std::span<const int> row_idx, std::span<const int> col_idx) const;
  RealMatrix to_real() const;

  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int8_t> data_;
};

/// True iff S is square and S * S^t = N * I in exact integer arithmetic.
bool is_hadamard(const SignMatrix& s);

/// A square sign matrix with pairwise-orthogonal rows.
class HadamardMatrix {
 public:
  /// Throws Error(Domain) if `body` is not Hadamard.
  explicit HadamardMatrix(SignMatrix body);

  int order() const noexcept { return body_.rows(); }
  const SignMatrix& body() const noexcept { return body_; }
  int operator()(int i, int j) const noexcept { return body_(i, j); }

  friend bool operator==(const HadamardMatrix&, const HadamardMatrix&) = default;

 private:
  // Skips the O(N^3) check for bodies that are Hadamard by construction.
  struct Trusted {};
  HadamardMatrix(SignMatrix body, Trusted) : body_(std::move(body)) {}
  friend HadamardMatrix walsh(int n, int max_order);

  SignMatrix body_;
};

/// H together with the row and column index sets selecting block A.
/// Blocks: A = H[rows, cols], B = H[rows, ~cols], C = H[~rows, cols],
/// D = H[~rows, ~cols], where ~ is the sorted complement.
class PartitionedHadamard {
 public:
  /// Indices are 0-based. They are sorted on construction; duplicates,
  /// out-of-range entries, mismatched sizes or r outside [1, N) throw Domain.
  PartitionedHadamard(HadamardMatrix h, IndexList rows_a, IndexList cols_a);

  const HadamardMatrix& hadamard() const noexcept { return h_; }
  int order() const noexcept { return h_.order(); }
  int r() const noexcept { return static_cast<int>(rows_a_.size()); }
  int d() const noexcept { return order() - r(); }

  const IndexList& rows_a() const noexcept { return rows_a_; }
  const IndexList& cols_a() const noexcept { return cols_a_; }
  const IndexList& rows_d() const noexcept { return rows_d_; }
  const IndexList& cols_d() const noexcept { return cols_d_; }

  SignMatrix a() const { return h_.body().submatrix(rows_a_, cols_a_); }
  SignMatrix b() const { return h_.body().submatrix(rows_a_, cols_d_); }
  SignMatrix c() const { return h_.body().submatrix(rows_d_, cols_a_); }
  SignMatrix d_block() const { return h_.body().submatrix(rows_d_, cols_d_); }

 private:
  HadamardMatrix h_;
  IndexList rows_a_, cols_a_, rows_d_, cols_d_;
};

/// Grid of block values with per-block row and column sizes.
struct BlockConstantSpec {
  RealMatrix block_values;  // k x l
  std::vector<int> row_sizes;  // k entries
  std::vector<int> col_sizes;  // l entries
};

RealMatrix block_constant(const BlockConstantSpec& spec);
/// Square-diagonal shorthand: row and column sizes are both `sizes`.
RealMatrix block_constant(const RealMatrix& block_values, const std::vector<int>& sizes);

// Catalog ---------------------------------------------------------------

/// W_{2^n} as the n-th Kronecker power of [[+,+],[+,-]].
HadamardMatrix walsh(int n, int max_order = kDefaultMaxOrder);

/// The 12x12 Hadamard matrix in the fixed layout used by the counterexample
/// reproduction: first row + followed by eleven -.
HadamardMatrix paley12();

/// (H (x) K)_{ia,jb} = H_ij K_ab with lexicographic double indices.
SignMatrix kronecker(const SignMatrix& h, const SignMatrix& k, int max_order = kDefaultMaxOrder);

/// result(i, j) = row_signs[i] * col_signs[j] * S(row_perm[i], col_perm[j]).
/// Empty sign vectors mean all +1.
SignMatrix permute_negate(const SignMatrix& s, std::span<const int> row_perm,
                          std::span<const int> col_perm, std::span<const int> row_signs = {},
                          std::span<const int> col_signs = {});

/// Negates columns so the first row is all +, then rows so the first column is all +.
SignMatrix normalize(const SignMatrix& s);

// Text format -------------------------------------------------------------

/// One row per line of '+'/'-' characters; spaces and tabs are ignored,
/// blank lines are skipped. Throws Error(Parse) on other characters or
/// ragged rows.
SignMatrix parse_sign_matrix(std::string_view text);
std::string serialize_sign_matrix(const SignMatrix& s);

// Small helpers on real matrices --------------------------------------------

/// max_ij |M_ij|
double max_abs(const RealMatrix& m);

/// 1-based comma-separated list, e.g. "1,2,3,5" -> {0,1,2,4}.
IndexList parse_index_list(std::string_view text);
std::string format_index_list(const IndexList& idx);

/// Sorted complement of `idx` in {0..n-1}.
IndexList complement_indices(const IndexList& idx, int n);

}  // namespace hadlab
