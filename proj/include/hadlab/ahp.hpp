#pragma once

// Almost Hadamard matrices (AHM) and almost Hadamard sign patterns (AHP).
//
// U = H / sqrt(N) orthogonal is a local maximum of the entrywise 1-norm on
// O(N) iff every U_ij != 0 and U^t S >= 0 for S = sgn(U). A sign matrix S is
// an AHP iff some AHM has sign pattern S; for invertible S the only
// candidate is U = Pol(S), and then U^t S = sqrt(S^t S) is automatically PSD,
// so the decision reduces to the entrywise sign test.

#include <optional>
#include <variant>

#include "hadlab/json_writer.hpp"
#include "hadlab/matcore.hpp"
#include "hadlab/numlin.hpp"

namespace hadlab {

enum class AhpStatus { AHP, NotAHP, Singular };
const char* to_string(AhpStatus s) noexcept;

struct ZeroEntry {
  int row = 0, col = 0;  // 0-based
  double magnitude = 0.0;
  bool borderline = false;  // |U_ij| above zero tolerance but inside the warning band
};

struct SignMismatch {
  int row = 0, col = 0;  // 0-based
  double u = 0.0;
  int s = 0;
};

/// Only produced by ahm_check: U^t S is asymmetric or has a negative eigenvalue.
struct HessianNotPsd {
  double min_eigenvalue = 0.0;  // of the symmetric part
  double asymmetry = 0.0;       // ||U^t S - S^t U||_inf
};

using AhpFailure = std::variant<ZeroEntry, SignMismatch, HessianNotPsd>;

struct AhpVerdict {
  AhpStatus status = AhpStatus::NotAHP;
  std::optional<AhpFailure> failure;
  double min_hessian_eigenvalue = 0.0;  // min eig of sym(U^t S)
  bool strict = false;                  // min_hessian_eigenvalue > tol.strict
};

/// sum_ij |M_ij|
double one_norm(const RealMatrix& m);

/// Tests whether H is an almost Hadamard matrix. Throws NotOrthogonal if
/// H / sqrt(N) is not orthogonal within tol.ortho.
AhpVerdict ahm_check(const RealMatrix& h, const Tolerances& tol = {});

/// Tests whether the sign matrix S is an almost Hadamard sign pattern.
AhpVerdict ahp_check(const SignMatrix& s, const Tolerances& tol = {});

/// Same decision using an already computed orthogonal factor U of S.
AhpVerdict ahp_verdict_from_polar(const SignMatrix& s, const RealMatrix& u, const Tolerances& tol = {});

/// K_N: (2 - N)/sqrt(N) on the diagonal, 2/sqrt(N) elsewhere. N >= 3.
RealMatrix kn_matrix(int n);

/// Failure coordinates are written 1-based.
Json to_json(const AhpVerdict& v);

}  // namespace hadlab
