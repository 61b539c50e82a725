#pragma once

// Closed-form polar decomposition of the block D complementary to A in a
// Hadamard matrix H = [A B; C D], and the block identities tying A to D.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hadlab/json_writer.hpp"
#include "hadlab/matcore.hpp"
#include "hadlab/numlin.hpp"

namespace hadlab {

struct XaYa {
  RealMatrix XA;  // (sqrt(N) I + sqrt(A^t A))^{-1} Pol(A)^t
  RealMatrix YA;  // (sqrt(N) I + sqrt(A A^t))^{-1}
  /// Max entrywise gap between the definition route and the route through
  /// the polar factors A = V P: XA = (sqrt(N)+P)^{-1} V^t, YA = V (sqrt(N)+P)^{-1} V^t.
  double path_deviation = 0.0;
};

/// Throws Singular if A is singular, Domain unless A is square with N > r.
XaYa xa_ya(const SignMatrix& a, int n, const Tolerances& tol = {});

struct ComplementFactors {
  RealMatrix XA, YA;  // r x r
  RealMatrix E, S;    // d x d
  RealMatrix U, T;    // D = U T
  double norm_a = 0.0;  // operator norm of A
  bool applicable = false;
};

enum class Applicability { Applicable, SingularA, NormTooLarge };
const char* to_string(Applicability a) noexcept;

struct ApplicabilityReport {
  Applicability status = Applicability::Applicable;
  double norm_a = 0.0;
  double sigma_min_a = 0.0;
};

/// Closed-form hypothesis: A invertible and ||A|| < sqrt(N). ||A|| within
/// tol.cross of sqrt(N) counts as not applicable.
ApplicabilityReport check_applicability(const SignMatrix& a, int n, const Tolerances& tol = {});

/// U = (D - E)/sqrt(N), T = sqrt(N) I - S with E = C XA B, S = B^t YA B.
/// Throws Singular when A is singular and Inapplicable when ||A|| >= sqrt(N).
ComplementFactors complement_polar(const PartitionedHadamard& p, const Tolerances& tol = {});

struct IdentityReport {
  std::string identity;
  bool pass = false;
  double max_deviation = 0.0;
};

/// AA^t+BB^t=NI, CC^t+DD^t=NI, AC^t+BD^t=0, A^tA+C^tC=NI in integer arithmetic.
std::vector<IdentityReport> gram_identities_check(const PartitionedHadamard& p);

struct SingularValueMatch {
  IdentityReport report;
  std::vector<std::pair<double, double>> pairs;  // (sigma of the smaller block, matched sigma of the larger)
  std::vector<double> removed;                   // values dropped from the larger block (all ~1)
};

/// Singular values of A/sqrt(N) and D/sqrt(N) agree after removing |d-r| ones
/// from the larger block, within `tol`.
SingularValueMatch singular_value_complement_check(const PartitionedHadamard& p, double tol = 1e-8);

struct DeterminantReport {
  IdentityReport report;
  double abs_det_a = 0.0;
  double abs_det_d = 0.0;
  double predicted_abs_det_d = 0.0;  // |det A| N^{(d-r)/2}
};

/// |det A| N^{(d-r)/2} = |det D| within relative `rel_tol`. Compared on the
/// rescaled blocks A/sqrt(N), D/sqrt(N); when both rescaled determinants are
/// below 1e-9 the pair counts as equal (both blocks singular).
DeterminantReport det_complement_check(const PartitionedHadamard& p, double rel_tol = 1e-6);

struct ComplementarityChecks {
  SingularValueMatch singular_values;
  DeterminantReport determinant;
};

/// Both checks above from one singular value computation per block.
/// `sigma_d` may carry the singular values of D (unscaled) when known.
ComplementarityChecks complementarity_checks(const PartitionedHadamard& p,
                                             const std::optional<RealVector>& sigma_d = std::nullopt,
                                             double sv_tol = 1e-8, double det_rel_tol = 1e-6);

Json to_json(const IdentityReport& r);
Json to_json(const ComplementFactors& f);

}  // namespace hadlab
