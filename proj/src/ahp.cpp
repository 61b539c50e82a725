#include "hadlab/ahp.hpp"

#include <cmath>

namespace hadlab {

const char* to_string(AhpStatus s) noexcept {
  switch (s) {
    case AhpStatus::AHP: return "AHP";
    case AhpStatus::NotAHP: return "NotAHP";
    case AhpStatus::Singular: return "Singular";
  }
  return "unknown";
}

double one_norm(const RealMatrix& m) { return m.cwiseAbs().sum(); }

namespace {

// First entry (row-major) with |U_ij| inside the zero band.
std::optional<ZeroEntry> find_zero(const RealMatrix& u, const Tolerances& tol) {
  const double band = tol.zero * tol.zero_band;
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      const double mag = std::abs(u(i, j));
      if (mag <= band) return ZeroEntry{static_cast<int>(i), static_cast<int>(j), mag, mag > tol.zero};
    }
  return std::nullopt;
}

RealMatrix sign_of(const RealMatrix& u) {
  return u.unaryExpr([](double v) { return v > 0.0 ? 1.0 : -1.0; });
}

}  // namespace

AhpVerdict ahm_check(const RealMatrix& h, const Tolerances& tol) {
  if (h.rows() != h.cols() || h.rows() == 0) throw Error(ErrorKind::SizeMismatch, "ahm_check: H must be square");
  const RealMatrix u = h / std::sqrt(static_cast<double>(h.rows()));
  if (orthogonality_defect(u) > tol.ortho)
    throw Error(ErrorKind::NotOrthogonal, "ahm_check: H / sqrt(N) is not orthogonal");

  AhpVerdict v;
  const RealMatrix s = sign_of(u);
  // U^t S >= 0 means symmetric PSD; an asymmetric U^t S is not even a
  // critical point, whatever its symmetric part.
  const PsdReport hess = is_psd(u.transpose() * s, tol.psd);
  v.min_hessian_eigenvalue = hess.min_eigenvalue;
  v.strict = v.min_hessian_eigenvalue > tol.strict && hess.asymmetry <= tol.sym;
  if (auto z = find_zero(u, tol)) {
    v.status = AhpStatus::NotAHP;
    v.failure = *z;
  } else if (v.min_hessian_eigenvalue < -tol.psd || hess.asymmetry > tol.sym) {
    v.status = AhpStatus::NotAHP;
    v.failure = HessianNotPsd{v.min_hessian_eigenvalue, hess.asymmetry};
  } else {
    v.status = AhpStatus::AHP;
  }
  return v;
}

AhpVerdict ahp_verdict_from_polar(const SignMatrix& s, const RealMatrix& u, const Tolerances& tol) {
  AhpVerdict v;
  const RealMatrix sm = s.to_real();
  v.min_hessian_eigenvalue = is_psd(u.transpose() * sm, tol.psd).min_eigenvalue;
  v.strict = v.min_hessian_eigenvalue > tol.strict;
  if (auto z = find_zero(u, tol)) {
    v.status = AhpStatus::NotAHP;
    v.failure = *z;
    return v;
  }
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      const int sign = u(i, j) > 0.0 ? 1 : -1;
      if (sign != s(static_cast<int>(i), static_cast<int>(j))) {
        v.status = AhpStatus::NotAHP;
        v.failure = SignMismatch{static_cast<int>(i), static_cast<int>(j), u(i, j), s(static_cast<int>(i), static_cast<int>(j))};
        return v;
      }
    }
  v.status = AhpStatus::AHP;
  return v;
}

AhpVerdict ahp_check(const SignMatrix& s, const Tolerances& tol) {
  if (!s.square()) throw Error(ErrorKind::SizeMismatch, "ahp_check: S must be square");
  const PolarDecomposition p = polar(s.to_real(), tol);
  if (!p.unique) {
    AhpVerdict v;
    v.status = AhpStatus::Singular;
    return v;
  }
  return ahp_verdict_from_polar(s, p.U, tol);
}

RealMatrix kn_matrix(int n) {
  if (n < 3) throw Error(ErrorKind::Domain, "K_N requires N >= 3");
  const double root = std::sqrt(static_cast<double>(n));
  RealMatrix k = RealMatrix::Constant(n, n, 2.0 / root);
  k.diagonal().setConstant((2.0 - n) / root);
  return k;
}

Json to_json(const AhpVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  if (!v.failure) {
    j["failure"] = nullptr;
  } else {
    Json f;
    if (const auto* z = std::get_if<ZeroEntry>(&*v.failure)) {
      f["kind"] = "ZeroEntry";
      f["row"] = z->row + 1;
      f["col"] = z->col + 1;
      f["magnitude"] = z->magnitude;
      f["borderline"] = z->borderline;
    } else if (const auto* m = std::get_if<SignMismatch>(&*v.failure)) {
      f["kind"] = "SignMismatch";
      f["row"] = m->row + 1;
      f["col"] = m->col + 1;
      f["u"] = m->u;
      f["s"] = m->s;
    } else {
      f["kind"] = "HessianNotPsd";
      f["minEigenvalue"] = std::get<HessianNotPsd>(*v.failure).min_eigenvalue;
      f["asymmetry"] = std::get<HessianNotPsd>(*v.failure).asymmetry;
    }
    j["failure"] = std::move(f);
  }
  j["minHessianEigenvalue"] = v.min_hessian_eigenvalue;
  j["strict"] = v.strict;
  return j;
}

}  // namespace hadlab
