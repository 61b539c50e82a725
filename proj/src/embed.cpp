#include "hadlab/embed.hpp"

#include <set>

namespace hadlab {

namespace {

// Bit string y (as an integer, first bit most significant) with
// (-1)^{y_i} = D_{i,col}.
int column_code(const SignMatrix& d, int col) {
  int code = 0;
  for (int i = 0; i < d.rows(); ++i) code = (code << 1) | (d(i, col) < 0 ? 1 : 0);
  return code;
}

IndexList unit_rows(int d) {
  IndexList rows;
  for (int i = 0; i < d; ++i) rows.push_back(1 << (d - 1 - i));
  return rows;
}

void require_square(const SignMatrix& d) {
  if (!d.square() || d.rows() == 0) throw Error(ErrorKind::Domain, "embedding target must be a non-empty square matrix");
  if (d.rows() > 30) throw Error(ErrorKind::Resource, "embedding target too large");
}

}  // namespace

int ceil_log2(int v) {
  int k = 0;
  while ((1 << k) < v) ++k;
  return k;
}

bool Embedding::verifies(const SignMatrix& target) const {
  if (static_cast<int>(row_indices.size()) != target.rows() || static_cast<int>(col_indices.size()) != target.cols())
    return false;
  return host.body().submatrix(row_indices, col_indices) == target;
}

Embedding embed_distinct_columns(const SignMatrix& d, int max_order) {
  require_square(d);
  const int n = d.rows();
  std::set<int> seen;
  Embedding e;
  for (int j = 0; j < n; ++j) {
    const int code = column_code(d, j);
    if (!seen.insert(code).second) throw Error(ErrorKind::Domain, "embed_distinct_columns: duplicate columns");
    e.col_indices.push_back(code);
  }
  e.exponent = n;
  e.host = walsh(n, max_order);
  e.row_indices = unit_rows(n);
  return e;
}

Embedding embed_general(const SignMatrix& d, int max_order) {
  require_square(d);
  const int n = d.rows();
  const int extra = ceil_log2(n);
  Embedding e;
  e.exponent = n + extra;
  e.host = walsh(e.exponent, max_order);
  // Rows (0, e_i) of W_R (x) W_{2^d}: same indices as in W_{2^d}.
  e.row_indices = unit_rows(n);
  // The k-th occurrence of a column goes to copy k, index k * 2^d + y.
  std::vector<int> uses(static_cast<std::size_t>(1) << n, 0);
  for (int j = 0; j < n; ++j) {
    const int code = column_code(d, j);
    const int copy = uses[static_cast<std::size_t>(code)]++;
    e.col_indices.push_back((copy << n) + code);
  }
  return e;
}

Json to_json(const Embedding& e) {
  Json j;
  j["hostExponent"] = e.exponent;
  j["hostOrder"] = e.host.order();
  j["rowIndices"] = to_json_indices(e.row_indices);
  j["colIndices"] = to_json_indices(e.col_indices);
  return j;
}

}  // namespace hadlab
