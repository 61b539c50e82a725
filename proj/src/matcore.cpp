#include "hadlab/matcore.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

namespace hadlab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Resource: return "resource";
    case ErrorKind::SizeMismatch: return "size-mismatch";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::Inapplicable: return "inapplicable";
    case ErrorKind::NotOrthogonal: return "not-orthogonal";
    case ErrorKind::Convergence: return "convergence";
  }
  return "unknown";
}

// SignMatrix ---------------------------------------------------------------

SignMatrix::SignMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw Error(ErrorKind::Domain, "negative matrix dimension");
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 1);
}

SignMatrix::SignMatrix(int rows, int cols, std::span<const int> entries) : SignMatrix(rows, cols) {
  if (entries.size() != data_.size())
    throw Error(ErrorKind::SizeMismatch, "entry count " + std::to_string(entries.size()) +
                                             " != " + std::to_string(rows) + "x" + std::to_string(cols));
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k] != 1 && entries[k] != -1)
      throw Error(ErrorKind::Domain, "sign matrix entry must be -1 or +1");
    data_[k] = static_cast<std::int8_t>(entries[k]);
  }
}

SignMatrix::SignMatrix(std::initializer_list<std::initializer_list<int>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_) throw Error(ErrorKind::SizeMismatch, "ragged rows");
    for (int v : row) {
      if (v != 1 && v != -1) throw Error(ErrorKind::Domain, "sign matrix entry must be -1 or +1");
      data_.push_back(static_cast<std::int8_t>(v));
    }
  }
}

int SignMatrix::at(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw Error(ErrorKind::Domain, "index out of range");
  return (*this)(i, j);
}

void SignMatrix::set(int i, int j, int sign) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw Error(ErrorKind::Domain, "index out of range");
  if (sign != 1 && sign != -1) throw Error(ErrorKind::Domain, "sign matrix entry must be -1 or +1");
  data_[index(i, j)] = static_cast<std::int8_t>(sign);
}

SignMatrix SignMatrix::transpose() const {
  SignMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.data_[t.index(j, i)] = data_[index(i, j)];
  return t;
}

SignMatrix SignMatrix::submatrix(std::span<const int> row_idx, std::span<const int> col_idx) const {
  SignMatrix out(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
  for (std::size_t a = 0; a < row_idx.size(); ++a) {
    if (row_idx[a] < 0 || row_idx[a] >= rows_) throw Error(ErrorKind::Domain, "row index out of range");
    for (std::size_t b = 0; b < col_idx.size(); ++b) {
      if (col_idx[b] < 0 || col_idx[b] >= cols_) throw Error(ErrorKind::Domain, "column index out of range");
      out.data_[out.index(static_cast<int>(a), static_cast<int>(b))] = data_[index(row_idx[a], col_idx[b])];
    }
  }
  return out;
}

RealMatrix SignMatrix::to_real() const {
  RealMatrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

bool is_hadamard(const SignMatrix& s) {
  if (!s.square()) return false;
  const int n = s.rows();
  for (int i = 0; i < n; ++i) {
    for (int k = i; k < n; ++k) {
      std::int64_t dot = 0;
      for (int j = 0; j < n; ++j) dot += s(i, j) * s(k, j);
      if (dot != (i == k ? n : 0)) return false;
    }
  }
  return true;
}

HadamardMatrix::HadamardMatrix(SignMatrix body) : body_(std::move(body)) {
  if (!is_hadamard(body_)) throw Error(ErrorKind::Domain, "matrix is not Hadamard");
}

// PartitionedHadamard ---------------------------------------------------------

namespace {

IndexList checked_subset(IndexList idx, int n, const char* what) {
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
    throw Error(ErrorKind::Domain, std::string("duplicate ") + what + " index");
  for (int i : idx)
    if (i < 0 || i >= n) throw Error(ErrorKind::Domain, std::string(what) + " index out of range");
  return idx;
}

}  // namespace

IndexList complement_indices(const IndexList& idx, int n) {
  IndexList out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(idx.begin(), idx.end(), i)) out.push_back(i);
  return out;
}

PartitionedHadamard::PartitionedHadamard(HadamardMatrix h, IndexList rows_a, IndexList cols_a)
    : h_(std::move(h)),
      rows_a_(checked_subset(std::move(rows_a), h_.order(), "row")),
      cols_a_(checked_subset(std::move(cols_a), h_.order(), "column")) {
  if (rows_a_.size() != cols_a_.size())
    throw Error(ErrorKind::Domain, "row and column selections differ in size");
  if (rows_a_.empty() || static_cast<int>(rows_a_.size()) >= h_.order())
    throw Error(ErrorKind::Domain, "split size r must satisfy 1 <= r < N");
  rows_d_ = complement_indices(rows_a_, h_.order());
  cols_d_ = complement_indices(cols_a_, h_.order());
}

// Block-constant matrices ------------------------------------------------------

RealMatrix block_constant(const BlockConstantSpec& spec) {
  const auto k = static_cast<std::size_t>(spec.block_values.rows());
  const auto l = static_cast<std::size_t>(spec.block_values.cols());
  if (spec.row_sizes.size() != k || spec.col_sizes.size() != l)
    throw Error(ErrorKind::SizeMismatch, "block grid is " + std::to_string(k) + "x" + std::to_string(l) +
                                             " but size lists have " + std::to_string(spec.row_sizes.size()) +
                                             " and " + std::to_string(spec.col_sizes.size()) + " entries");
  const auto nonneg = [](int v) { return v >= 0; };
  if (!std::all_of(spec.row_sizes.begin(), spec.row_sizes.end(), nonneg) ||
      !std::all_of(spec.col_sizes.begin(), spec.col_sizes.end(), nonneg))
    throw Error(ErrorKind::Domain, "block sizes must be non-negative");

  int rows = 0, cols = 0;
  for (int m : spec.row_sizes) rows += m;
  for (int n : spec.col_sizes) cols += n;
  RealMatrix out(rows, cols);
  int r0 = 0;
  for (std::size_t bi = 0; bi < k; ++bi) {
    int c0 = 0;
    for (std::size_t bj = 0; bj < l; ++bj) {
      out.block(r0, c0, spec.row_sizes[bi], spec.col_sizes[bj])
          .setConstant(spec.block_values(static_cast<Eigen::Index>(bi), static_cast<Eigen::Index>(bj)));
      c0 += spec.col_sizes[bj];
    }
    r0 += spec.row_sizes[bi];
  }
  return out;
}

RealMatrix block_constant(const RealMatrix& block_values, const std::vector<int>& sizes) {
  return block_constant(BlockConstantSpec{block_values, sizes, sizes});
}

// Catalog ----------------------------------------------------------------------

SignMatrix kronecker(const SignMatrix& h, const SignMatrix& k, int max_order) {
  const std::int64_t rows = std::int64_t{h.rows()} * k.rows();
  const std::int64_t cols = std::int64_t{h.cols()} * k.cols();
  if (rows > max_order || cols > max_order)
    throw Error(ErrorKind::Resource, "Kronecker product of size " + std::to_string(rows) + "x" +
                                         std::to_string(cols) + " exceeds max order " +
                                         std::to_string(max_order));
  SignMatrix out(static_cast<int>(rows), static_cast<int>(cols));
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j)
      for (int a = 0; a < k.rows(); ++a)
        for (int b = 0; b < k.cols(); ++b)
          out.set(i * k.rows() + a, j * k.cols() + b, h(i, j) * k(a, b));
  return out;
}

HadamardMatrix walsh(int n, int max_order) {
  if (n < 0) throw Error(ErrorKind::Domain, "Walsh exponent must be non-negative");
  if (n >= 31 || (std::int64_t{1} << n) > max_order)
    throw Error(ErrorKind::Resource, "W_{2^" + std::to_string(n) + "} exceeds max order " +
                                         std::to_string(max_order));
  const SignMatrix w2{{1, 1}, {1, -1}};
  SignMatrix out(1, 1);
  for (int i = 0; i < n; ++i) out = kronecker(out, w2, max_order);
  return HadamardMatrix(std::move(out), HadamardMatrix::Trusted{});
}

HadamardMatrix paley12() {
  static constexpr std::string_view kRows =
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
  return HadamardMatrix(parse_sign_matrix(kRows));
}

SignMatrix permute_negate(const SignMatrix& s, std::span<const int> row_perm, std::span<const int> col_perm,
                          std::span<const int> row_signs, std::span<const int> col_signs) {
  const auto check_perm = [](std::span<const int> p, int n, const char* what) {
    if (static_cast<int>(p.size()) != n)
      throw Error(ErrorKind::Domain, std::string(what) + " permutation has wrong length");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : p) {
      if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
        throw Error(ErrorKind::Domain, std::string("malformed ") + what + " permutation");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  };
  const auto check_signs = [](std::span<const int> sg, int n, const char* what) {
    if (sg.empty()) return;
    if (static_cast<int>(sg.size()) != n)
      throw Error(ErrorKind::Domain, std::string(what) + " sign vector has wrong length");
    for (int v : sg)
      if (v != 1 && v != -1) throw Error(ErrorKind::Domain, "signs must be -1 or +1");
  };
  check_perm(row_perm, s.rows(), "row");
  check_perm(col_perm, s.cols(), "column");
  check_signs(row_signs, s.rows(), "row");
  check_signs(col_signs, s.cols(), "column");

  SignMatrix out(s.rows(), s.cols());
  for (int i = 0; i < s.rows(); ++i) {
    const int rs = row_signs.empty() ? 1 : row_signs[static_cast<std::size_t>(i)];
    for (int j = 0; j < s.cols(); ++j) {
      const int cs = col_signs.empty() ? 1 : col_signs[static_cast<std::size_t>(j)];
      out.set(i, j, rs * cs * s(row_perm[static_cast<std::size_t>(i)], col_perm[static_cast<std::size_t>(j)]));
    }
  }
  return out;
}

SignMatrix normalize(const SignMatrix& s) {
  SignMatrix out = s;
  if (s.rows() == 0 || s.cols() == 0) return out;
  for (int j = 0; j < out.cols(); ++j)
    if (out(0, j) < 0)
      for (int i = 0; i < out.rows(); ++i) out.negate(i, j);
  for (int i = 0; i < out.rows(); ++i)
    if (out(i, 0) < 0)
      for (int j = 0; j < out.cols(); ++j) out.negate(i, j);
  return out;
}

// Text format --------------------------------------------------------------------

SignMatrix parse_sign_matrix(std::string_view text) {
  std::vector<int> entries;
  int rows = 0;
  int cols = -1;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const auto line = text.substr(pos, end - pos);
    ++line_no;
    int width = 0;
    for (char ch : line) {
      if (ch == ' ' || ch == '\t' || ch == '\r') continue;
      if (ch == '+') {
        entries.push_back(1);
      } else if (ch == '-') {
        entries.push_back(-1);
      } else {
        throw Error(ErrorKind::Parse, "invalid character '" + std::string(1, ch) + "' on line " +
                                          std::to_string(line_no));
      }
      ++width;
    }
    if (width > 0) {
      if (cols >= 0 && width != cols)
        throw Error(ErrorKind::Parse, "ragged rows: line " + std::to_string(line_no) + " has " +
                                          std::to_string(width) + " entries, expected " +
                                          std::to_string(cols));
      cols = width;
      ++rows;
    }
    pos = end + 1;
  }
  if (rows == 0) throw Error(ErrorKind::Parse, "empty matrix");
  return SignMatrix(rows, cols, entries);
}

std::string serialize_sign_matrix(const SignMatrix& s) {
  std::string out;
  out.reserve(static_cast<std::size_t>(s.rows()) * static_cast<std::size_t>(s.cols() + 1));
  for (int i = 0; i < s.rows(); ++i) {
    for (int j = 0; j < s.cols(); ++j) out += s(i, j) > 0 ? '+' : '-';
    out += '\n';
  }
  return out;
}

// Helpers ----------------------------------------------------------------------

double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

IndexList parse_index_list(std::string_view text) {
  IndexList out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find(',', pos), text.size());
    auto token = text.substr(pos, end - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
      throw Error(ErrorKind::Parse, "bad index '" + std::string(token) + "'");
    if (value < 1) throw Error(ErrorKind::Parse, "indices are 1-based");
    out.push_back(value - 1);
    pos = end + 1;
  }
  return out;
}

std::string format_index_list(const IndexList& idx) {
  std::string out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(idx[k] + 1);
  }
  return out;
}

}  // namespace hadlab
