#include "hadlab/smallr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hadlab {

namespace {

void require_order(bool ok, int r, int n) {
  if (!ok)
    throw Error(ErrorKind::Domain, "no type-(" + std::to_string(r) + ") Hadamard matrix of order " + std::to_string(n));
}

// Column sign vectors of the B blocks, one per block, in block order.
std::vector<std::vector<int>> block_vectors(int r) {
  switch (r) {
    case 1: return {{1}};
    case 2: return {{1, 1}, {1, -1}};
    case 3: return {{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1}};
  }
  throw Error(ErrorKind::Domain, "patterns exist for r = 1, 2, 3 only");
}

std::vector<int> expected_sizes(int r, int n) {
  switch (r) {
    case 1: return {n - 1};
    case 2: return {n / 2 - 1, n / 2 - 1};
    case 3: return {n / 4 - 1, n / 4 - 1, n / 4 - 1, n / 4};
  }
  throw Error(ErrorKind::Domain, "patterns exist for r = 1, 2, 3 only");
}

int block_of(const std::vector<std::vector<int>>& blocks, const std::vector<int>& v) {
  for (std::size_t k = 0; k < blocks.size(); ++k)
    if (blocks[k] == v) return static_cast<int>(k);
  return -1;
}

// Tries to arrange `hn` with `rows` (ordered) as the first r rows.
std::optional<PatternRealization> try_rows(const SignMatrix& hn, const IndexList& rows, int r) {
  const int n = hn.rows();
  const SignMatrix a = small_pattern(r);
  const auto blocks = block_vectors(r);
  const auto sizes = expected_sizes(r, n);

  const auto column_vector = [&](int c) {
    std::vector<int> v(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) v[static_cast<std::size_t>(i)] = hn(rows[static_cast<std::size_t>(i)], c);
    return v;
  };

  std::vector<char> used(static_cast<std::size_t>(n), 0);
  IndexList a_cols;
  for (int j = 0; j < r; ++j) {
    int found = -1;
    for (int c = 0; c < n && found < 0; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      bool match = true;
      for (int i = 0; i < r && match; ++i) match = hn(rows[static_cast<std::size_t>(i)], c) == a(i, j);
      if (match) found = c;
    }
    if (found < 0) return std::nullopt;
    used[static_cast<std::size_t>(found)] = 1;
    a_cols.push_back(found);
  }

  std::vector<std::pair<int, int>> rest_cols;  // (block, column)
  for (int c = 0; c < n; ++c) {
    if (used[static_cast<std::size_t>(c)]) continue;
    const int b = block_of(blocks, column_vector(c));
    if (b < 0) return std::nullopt;
    rest_cols.emplace_back(b, c);
  }

  std::vector<std::pair<int, int>> rest_rows;  // (block, row)
  for (int i = 0; i < n; ++i) {
    if (std::find(rows.begin(), rows.end(), i) != rows.end()) continue;
    std::vector<int> v(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) v[static_cast<std::size_t>(j)] = hn(i, a_cols[static_cast<std::size_t>(j)]);
    const int b = block_of(blocks, v);
    if (b < 0) return std::nullopt;
    rest_rows.emplace_back(b, i);
  }

  std::sort(rest_cols.begin(), rest_cols.end());
  std::sort(rest_rows.begin(), rest_rows.end());
  std::vector<int> col_counts(blocks.size(), 0), row_counts(blocks.size(), 0);
  for (const auto& [b, c] : rest_cols) ++col_counts[static_cast<std::size_t>(b)];
  for (const auto& [b, i] : rest_rows) ++row_counts[static_cast<std::size_t>(b)];
  if (col_counts != sizes || row_counts != sizes) return std::nullopt;

  PatternRealization out;
  out.r = r;
  out.row_order = rows;
  out.col_order = a_cols;
  for (const auto& [b, i] : rest_rows) out.row_order.push_back(i);
  for (const auto& [b, c] : rest_cols) out.col_order.push_back(c);
  out.arranged = permute_negate(hn, out.row_order, out.col_order);
  return out;
}

}  // namespace

SignMatrix small_pattern(int r) {
  switch (r) {
    case 1: return SignMatrix{{1}};
    case 2: return SignMatrix{{1, 1}, {1, -1}};
    case 3: return SignMatrix{{1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
  }
  throw Error(ErrorKind::Domain, "patterns exist for r = 1, 2, 3 only");
}

SmallRForm closed_form_r1(int n) {
  require_order(n == 2 || (n >= 4 && n % 4 == 0), 1, n);
  SmallRForm f;
  f.r = 1;
  f.n = n;
  f.block_sizes = {n - 1};
  const double v = 1.0 / (1.0 + std::sqrt(static_cast<double>(n)));
  f.E = RealMatrix::Constant(n - 1, n - 1, v);
  f.S = f.E;
  return f;
}

SmallRForm closed_form_r2(int n) {
  require_order(n >= 4 && n % 4 == 0, 2, n);
  SmallRForm f;
  f.r = 2;
  f.n = n;
  f.block_sizes = {n / 2 - 1, n / 2 - 1};
  const double sn = std::sqrt(static_cast<double>(n));
  RealMatrix e_grid(2, 2);
  e_grid << 1, 1, 1, -1;
  f.E = 2.0 / (2.0 + std::sqrt(2.0 * n)) * block_constant(e_grid, f.block_sizes);
  f.S = 2.0 / (std::sqrt(2.0) + sn) * block_constant(RealMatrix::Identity(2, 2), f.block_sizes);
  return f;
}

SmallRForm closed_form_r3(int n) {
  require_order(n >= 8 && n % 4 == 0, 3, n);
  SmallRForm f;
  f.r = 3;
  f.n = n;
  const int q = n / 4;
  f.block_sizes = {q - 1, q - 1, q - 1, q};
  const double sn = std::sqrt(static_cast<double>(n));
  const double den = 3.0 * sn + 6.0;
  const double x = (7.0 * sn + 6.0) / den;
  const double y = (5.0 * sn + 6.0) / den;
  const double z = (9.0 * sn + 10.0) / den;
  const double t = (3.0 * sn + 2.0) / den;
  f.scalars = {{"x", x}, {"y", y}, {"z", z}, {"t", t}};

  RealMatrix e_grid(4, 4);
  e_grid << x, y, y, 1,
            y, -y, x, -1,
            y, x, -y, -1,
            1, -1, -1, -3;
  RealMatrix s_grid(4, 4);
  s_grid << z, t, t, -1,
            t, z, -t, 1,
            t, -t, z, 1,
            -1, 1, 1, 3;
  f.E = block_constant(e_grid, f.block_sizes) / (sn + 1.0);
  f.S = block_constant(s_grid, f.block_sizes) / (sn + 1.0);
  return f;
}

SmallRForm closed_form(int r, int n) {
  switch (r) {
    case 1: return closed_form_r1(n);
    case 2: return closed_form_r2(n);
    case 3: return closed_form_r3(n);
  }
  throw Error(ErrorKind::Domain, "closed forms exist for r = 1, 2, 3 only");
}

std::vector<double> spectrum_T(int r, int n) {
  const double sn = std::sqrt(static_cast<double>(n));
  std::vector<double> out;
  if (r == 1) {
    if (n < 2) throw Error(ErrorKind::Domain, "spectrum_T: N >= 2 required");
    out.push_back(1.0);
    out.insert(out.end(), static_cast<std::size_t>(n - 2), sn);
  } else if (r == 2) {
    if (n < 4) throw Error(ErrorKind::Domain, "spectrum_T: N >= 4 required");
    out.assign(2, std::sqrt(2.0));
    out.insert(out.end(), static_cast<std::size_t>(n - 4), sn);
  } else {
    throw Error(ErrorKind::Domain, "spectrum_T: r must be 1 or 2");
  }
  std::sort(out.begin(), out.end());
  return out;
}

PartitionedHadamard PatternRealization::split() const {
  IndexList lead(static_cast<std::size_t>(r));
  std::iota(lead.begin(), lead.end(), 0);
  return PartitionedHadamard(HadamardMatrix(arranged), lead, lead);
}

std::optional<PatternRealization> realize_pattern(const HadamardMatrix& h, int r) {
  const int n = h.order();
  (void)block_vectors(r);  // rejects r outside {1, 2, 3}
  if (r == 1 && !(n == 2 || (n >= 4 && n % 4 == 0))) return std::nullopt;
  if (r == 2 && !(n >= 4 && n % 4 == 0)) return std::nullopt;
  if (r == 3 && !(n >= 8 && n % 4 == 0)) return std::nullopt;
  const SignMatrix hn = normalize(h.body());

  IndexList rows{0};
  if (r == 1) return try_rows(hn, rows, r);
  for (int i1 = 1; i1 < n; ++i1) {
    if (r == 2) {
      if (auto out = try_rows(hn, {0, i1}, r)) return out;
      continue;
    }
    for (int i2 = 1; i2 < n; ++i2) {
      if (i2 == i1) continue;
      if (auto out = try_rows(hn, {0, i1, i2}, r)) return out;
    }
  }
  return std::nullopt;
}

Json to_json(const SmallRForm& f) {
  Json j;
  j["r"] = f.r;
  j["N"] = f.n;
  j["blockSizes"] = f.block_sizes;
  Json scalars = Json::object();
  for (const auto& [k, v] : f.scalars) scalars[k] = v;
  j["scalars"] = std::move(scalars);
  j["E"] = to_json(f.E);
  j["S"] = to_json(f.S);
  return j;
}

}  // namespace hadlab
