#pragma once

// Upper bounds on ||E||_inf and the sufficient conditions on N that make the
// complement D an AHP. These are advisory: reports compare them against the
// exact check, they never decide AHP status.

#include <optional>
#include <string>
#include <vector>

#include "hadlab/json_writer.hpp"
#include "hadlab/matcore.hpp"

namespace hadlab {

struct ThresholdCheck {
  std::string name;       // "hadamard", "c-based", "generic"
  bool applicable = false;  // inputs required by the condition were available
  double threshold = 0.0;   // right-hand side evaluated at this N
  bool pass = false;        // N > threshold
  std::optional<int> critical_n;  // smallest N in 4Z satisfying the condition
};

struct BoundReport {
  int r = 0;
  int n = 0;
  bool a_is_hadamard = false;
  std::optional<double> c;  // ||Pol(A) - A/sqrt(N)||_inf, computed at N = n
  std::optional<double> bound1;  // r sqrt(r) / (sqrt(r) + sqrt(N)), A Hadamard
  std::optional<double> bound2;  // r^2 c sqrt(N) / (N - r^2), r^2 < N
  std::optional<double> bound3;  // r^2 (1 + sqrt(N)) / (N - r^2), r^2 < N
  std::optional<double> actual_einf;
  std::vector<ThresholdCheck> thresholds;

  /// Every present bound is >= actual_einf - slack (true when no actual value).
  bool sound(double slack = 1e-9) const;
  bool any_threshold_passes() const;
};

/// Throws Domain if r > N - r.
BoundReport bound_e_inf(const SignMatrix& a, int n);
/// Formula-only variant without a concrete A: bound1 when `hadamard`,
/// bound3 when r^2 < N; bound2 needs A and is absent.
BoundReport bound_e_inf(int r, int n, bool hadamard);

/// Evaluates the three sufficient conditions. Without `a`, condition (2) is
/// not applicable and condition (1) uses `assume_hadamard`.
BoundReport ahp_thresholds(int r, int n, const std::optional<SignMatrix>& a = std::nullopt,
                           bool assume_hadamard = false);

/// bound_e_inf and ahp_thresholds merged, with the measured ||E||_inf attached.
BoundReport bound_report(const SignMatrix& a, int n, std::optional<double> actual_einf);

/// The Hadamard-case specialization of the c-based bound,
/// (r sqrt(r) sqrt(N) - r^2) / (N - r^2). Throws Domain unless r^2 < N.
double hadamard_case_cubic_remark(int r, int n);

/// c = ||Pol(A) - A/sqrt(N)||_inf. Throws Singular for singular A.
double polar_gap(const SignMatrix& a, int n);

Json to_json(const BoundReport& b);

}  // namespace hadlab
