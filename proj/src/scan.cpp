#include "hadlab/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>
#include <thread>
#include <utility>

#include "hadlab/numlin.hpp"

namespace hadlab {

namespace {

using Mask = std::uint64_t;

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

// Advances a sorted r-subset of {0..n-1} to its lexicographic successor.
bool next_combination(IndexList& idx, int n) {
  const int r = static_cast<int>(idx.size());
  int i = r - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
  if (i < 0) return false;
  ++idx[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

IndexList first_combination(int r) {
  IndexList idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
  return idx;
}

// Uniform integer in [0, bound) by rejection; independent of the standard
// library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do v = rng();
  while (v >= limit);
  return v % bound;
}

// Floyd's algorithm for a uniform r-subset of {0..n-1}.
Mask random_subset(std::mt19937_64& rng, int n, int r) {
  Mask m = 0;
  for (int j = n - r; j < n; ++j) {
    const int t = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(j) + 1));
    m |= (m >> t) & 1 ? Mask{1} << j : Mask{1} << t;
  }
  return m;
}

IndexList mask_to_indices(Mask m) {
  IndexList out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

void check_scan_args(int n, int r) {
  if (n > kMaxScanOrder) throw Error(ErrorKind::Resource, "scan supports orders up to 64");
  if (r < 1 || r >= n) throw Error(ErrorKind::Domain, "split size must satisfy 1 <= r < N");
}

}  // namespace

std::uint64_t split_count(int n, int r) {
  const unsigned __int128 c = binomial(n, r);
  const unsigned __int128 sq = c * c;
  return sq > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                        : static_cast<std::uint64_t>(sq);
}

void for_each_split(int n, int r, std::optional<std::uint64_t> limit, std::uint64_t seed,
                    const std::function<void(const Split&)>& fn) {
  check_scan_args(n, r);
  const std::uint64_t total = split_count(n, r);
  if (!limit || *limit >= total) {
    Split s{first_combination(r), {}};
    do {
      s.cols = first_combination(r);
      do fn(s);
      while (next_combination(s.cols, n));
    } while (next_combination(s.rows, n));
    return;
  }

  std::mt19937_64 rng(seed);
  std::set<std::pair<Mask, Mask>> drawn;
  while (drawn.size() < *limit) {
    const Mask rows = random_subset(rng, n, r);
    const Mask cols = random_subset(rng, n, r);
    drawn.emplace(rows, cols);
  }
  std::vector<Split> sample;
  sample.reserve(drawn.size());
  for (const auto& [rows, cols] : drawn) sample.push_back({mask_to_indices(rows), mask_to_indices(cols)});
  std::sort(sample.begin(), sample.end());
  for (const auto& s : sample) fn(s);
}

std::vector<Split> enumerate_splits(int n, int r, std::optional<std::uint64_t> limit, std::uint64_t seed) {
  std::vector<Split> out;
  for_each_split(n, r, limit, seed, [&](const Split& s) { out.push_back(s); });
  return out;
}

ScanRecord classify_split(const HadamardMatrix& h, const Split& split, const Tolerances& tol) {
  const PartitionedHadamard p(h, split.rows, split.cols);
  const SignMatrix a = p.a();
  const SignMatrix d = p.d_block();
  const RealMatrix dm = d.to_real();
  const double sqrt_n = std::sqrt(static_cast<double>(p.order()));

  ScanRecord rec;
  rec.split = {p.rows_a(), p.cols_a()};
  rec.applicability = check_applicability(a, p.order(), tol);
  rec.a_is_hadamard = is_hadamard(a);

  const PolarDecomposition oracle = polar(dm, tol);

  rec.thm_checks = gram_identities_check(p);
  const ComplementarityChecks cc = complementarity_checks(p, oracle.singular_values);
  rec.thm_checks.push_back(cc.singular_values.report);
  rec.thm_checks.push_back(cc.determinant.report);

  rec.verdict = oracle.unique ? ahp_verdict_from_polar(d, oracle.U, tol) : AhpVerdict{AhpStatus::Singular, {}, 0.0, false};

  if (rec.applicability.status == Applicability::Applicable) {
    const ComplementFactors f = complement_polar(p, tol);
    rec.einf = max_abs(f.E);
    rec.einf_from_closed_form = true;
    rec.oracle_deviation = std::max(max_abs(f.U - oracle.U), max_abs(f.T - oracle.T));
    rec.closed_form_orthogonality = orthogonality_defect(f.U);
    rec.closed_form_residual = max_abs(f.U * f.T - dm);
  } else if (oracle.unique) {
    rec.einf = max_abs(dm - sqrt_n * oracle.U);
  }

  if (p.r() <= p.d()) rec.bounds = bound_report(a, p.order(), rec.einf_from_closed_form ? rec.einf : std::nullopt);
  return rec;
}

namespace {

void fold(ScanSummary& sum, ScanRecord&& rec, const ScanOptions& opt) {
  const bool ahp = rec.verdict.status == AhpStatus::AHP;
  switch (rec.applicability.status) {
    case Applicability::SingularA: ++sum.count_singular_a; break;
    case Applicability::NormTooLarge: ++sum.count_inapplicable; break;
    case Applicability::Applicable: ++(ahp ? sum.count_ahp : sum.count_not_ahp); break;
  }

  auto& c = sum.checks;
  if (rec.oracle_deviation) {
    c.max_oracle_deviation = std::max(c.max_oracle_deviation, *rec.oracle_deviation);
    if (*rec.oracle_deviation > opt.tol.cross) ++c.oracle_failures;
  }
  for (const auto& t : rec.thm_checks)
    if (!t.pass) {
      ++c.identity_failures;
      break;
    }
  if (rec.bounds) {
    if (!rec.bounds->sound()) ++c.bound_violations;
    if (rec.applicability.status == Applicability::Applicable && rec.bounds->any_threshold_passes() && !ahp)
      ++c.threshold_violations;
  }
  if (rec.einf && *rec.einf < 1.0 && !ahp) ++c.einf_violations;

  if (rec.einf && rec.einf_from_closed_form && (!sum.worst_einf || *rec.einf > *sum.worst_einf)) {
    sum.worst_einf = rec.einf;
    sum.worst_einf_split = rec.split;
  }
  if (rec.verdict.status == AhpStatus::NotAHP) {
    ++sum.counterexample_total;
    if (sum.counterexamples.size() < opt.max_counterexamples) sum.counterexamples.push_back(std::move(rec));
  }
}

}  // namespace

ScanSummary scan(const HadamardMatrix& h, int r, const ScanOptions& options) {
  ScanSummary sum;
  sum.matrix = options.name.empty() ? matrix_fingerprint(h.body()) : options.name;
  sum.n = h.order();
  sum.r = r;
  sum.seed = options.seed;
  sum.limit = options.limit;

  const unsigned threads = std::max(1u, options.threads);
  constexpr std::size_t kBatch = 2048;
  std::vector<Split> batch;
  batch.reserve(kBatch);

  const auto flush = [&] {
    std::vector<ScanRecord> out(batch.size());
    if (threads == 1 || batch.size() < 2) {
      for (std::size_t i = 0; i < batch.size(); ++i) out[i] = classify_split(h, batch[i], options.tol);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
          for (std::size_t i = t; i < batch.size(); i += threads) out[i] = classify_split(h, batch[i], options.tol);
        });
      for (auto& th : pool) th.join();
    }
    for (auto& rec : out) fold(sum, std::move(rec), options);
    sum.total += batch.size();
    batch.clear();
  };

  for_each_split(h.order(), r, options.limit, options.seed, [&](const Split& s) {
    batch.push_back(s);
    if (batch.size() == kBatch) flush();
  });
  flush();
  return sum;
}

std::string matrix_fingerprint(const SignMatrix& s) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (char ch : serialize_sign_matrix(s)) {
    hash ^= static_cast<unsigned char>(ch);
    hash *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

Json to_json(const Split& s) {
  Json j;
  j["rows"] = to_json_indices(s.rows);
  j["cols"] = to_json_indices(s.cols);
  return j;
}

Json to_json(const ScanRecord& rec) {
  const auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  Json j = to_json(rec.split);
  j["aInvertible"] = rec.a_invertible();
  j["aNorm"] = rec.applicability.norm_a;
  j["aIsHadamard"] = rec.a_is_hadamard;
  j["applicability"] = to_string(rec.applicability.status);
  j["einf"] = opt(rec.einf);
  j["einfSource"] = rec.einf ? Json(rec.einf_from_closed_form ? "closed-form" : "oracle") : Json(nullptr);
  j["verdict"] = to_json(rec.verdict);
  j["boundChecks"] = rec.bounds ? to_json(*rec.bounds) : Json(nullptr);
  Json thm = Json::array();
  for (const auto& t : rec.thm_checks) thm.push_back(to_json(t));
  j["thmChecks"] = std::move(thm);
  j["oracleDeviation"] = opt(rec.oracle_deviation);
  return j;
}

Json to_json(const ScanSummary& s) {
  Json j;
  j["matrix"] = s.matrix;
  j["N"] = s.n;
  j["r"] = s.r;
  j["seed"] = s.seed;
  j["limit"] = s.limit ? Json(*s.limit) : Json(nullptr);
  j["totalSplits"] = s.total;
  Json counts;
  counts["ahp"] = s.count_ahp;
  counts["notAhp"] = s.count_not_ahp;
  counts["singularA"] = s.count_singular_a;
  counts["inapplicable"] = s.count_inapplicable;
  j["counts"] = std::move(counts);
  Json worst;
  worst["value"] = s.worst_einf ? Json(*s.worst_einf) : Json(nullptr);
  worst["rows"] = s.worst_einf ? to_json_indices(s.worst_einf_split.rows) : Json::array();
  worst["cols"] = s.worst_einf ? to_json_indices(s.worst_einf_split.cols) : Json::array();
  j["worstEinf"] = std::move(worst);
  Json checks;
  checks["maxOracleDeviation"] = s.checks.max_oracle_deviation;
  checks["oracleFailures"] = s.checks.oracle_failures;
  checks["boundViolations"] = s.checks.bound_violations;
  checks["thresholdViolations"] = s.checks.threshold_violations;
  checks["einfViolations"] = s.checks.einf_violations;
  checks["identityFailures"] = s.checks.identity_failures;
  j["checks"] = std::move(checks);
  j["counterexampleTotal"] = s.counterexample_total;
  Json ce = Json::array();
  for (const auto& rec : s.counterexamples) ce.push_back(to_json(rec));
  j["counterexamples"] = std::move(ce);
  return j;
}

}  // namespace hadlab
