#pragma once

// Enumeration and classification of r x r splits of a Hadamard matrix.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hadlab/ahp.hpp"
#include "hadlab/bounds.hpp"
#include "hadlab/complement.hpp"
#include "hadlab/json_writer.hpp"
#include "hadlab/matcore.hpp"

namespace hadlab {

struct Split {
  IndexList rows;  // 0-based, sorted
  IndexList cols;
  friend auto operator<=>(const Split&, const Split&) = default;
};

inline constexpr int kMaxScanOrder = 64;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// C(n, r)^2, saturating at UINT64_MAX.
std::uint64_t split_count(int n, int r);

/// Calls `fn` for every split in lexicographic (rows, cols) order, or, when
/// `limit` is below the total, for `limit` distinct pseudo-random splits
/// drawn with `seed` and then visited in lexicographic order.
void for_each_split(int n, int r, std::optional<std::uint64_t> limit, std::uint64_t seed,
                    const std::function<void(const Split&)>& fn);

std::vector<Split> enumerate_splits(int n, int r, std::optional<std::uint64_t> limit = std::nullopt,
                                    std::uint64_t seed = kDefaultSeed);

struct ScanRecord {
  Split split;
  ApplicabilityReport applicability;
  bool a_is_hadamard = false;
  std::optional<double> einf;
  bool einf_from_closed_form = false;
  AhpVerdict verdict;
  std::optional<BoundReport> bounds;  // absent when r > d
  std::vector<IdentityReport> thm_checks;
  /// Closed-form U, T against the SVD oracle (applicable splits only).
  std::optional<double> oracle_deviation;
  /// ||U^t U - I||_inf and ||U T - D||_inf of the closed form.
  std::optional<double> closed_form_orthogonality;
  std::optional<double> closed_form_residual;

  bool a_invertible() const { return applicability.status != Applicability::SingularA; }
};

ScanRecord classify_split(const HadamardMatrix& h, const Split& split, const Tolerances& tol = {});

struct ScanOptions {
  std::optional<std::uint64_t> limit;
  std::uint64_t seed = kDefaultSeed;
  std::string name;  // recorded in the summary; defaults to a content hash
  unsigned threads = 1;
  std::size_t max_counterexamples = 64;
  Tolerances tol;
};

struct ScanChecks {
  double max_oracle_deviation = 0.0;
  std::uint64_t oracle_failures = 0;      // deviation > tol.cross
  std::uint64_t bound_violations = 0;     // a bound below the measured ||E||_inf
  std::uint64_t threshold_violations = 0; // a passing condition with a non-AHP D
  std::uint64_t einf_violations = 0;      // ||E||_inf < 1 with a non-AHP D
  std::uint64_t identity_failures = 0;    // any block identity failing
};

struct ScanSummary {
  std::string matrix;
  int n = 0;
  int r = 0;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::uint64_t> limit;
  std::uint64_t total = 0;
  std::uint64_t count_ahp = 0;
  std::uint64_t count_not_ahp = 0;
  std::uint64_t count_singular_a = 0;
  std::uint64_t count_inapplicable = 0;
  std::optional<double> worst_einf;
  Split worst_einf_split;
  std::uint64_t counterexample_total = 0;
  std::vector<ScanRecord> counterexamples;  // non-AHP records in enumeration order
  ScanChecks checks;
};

/// Folds classify_split over the enumeration. The result does not depend on
/// options.threads.
ScanSummary scan(const HadamardMatrix& h, int r, const ScanOptions& options = {});

/// "fnv1a64:<hex>" of the sign-matrix text.
std::string matrix_fingerprint(const SignMatrix& s);

Json to_json(const Split& s);
Json to_json(const ScanRecord& rec);
Json to_json(const ScanSummary& s);

}  // namespace hadlab
