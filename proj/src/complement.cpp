#include "hadlab/complement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>

namespace hadlab {

namespace {

// (sqrt(N) I + sqrt(G))^{-1} for symmetric PSD G = Q diag(g) Q^t, inverting
// on the eigenvalues.
RealMatrix shifted_sqrt_inverse(const RealMatrix& g, double sqrt_n) {
  const SymEig e = sym_eig(g);
  RealVector inv(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i)
    inv(i) = 1.0 / (sqrt_n + std::sqrt(std::max(e.values(i), 0.0)));
  return e.vectors * inv.asDiagonal() * e.vectors.transpose();
}

// Same, for an already-square-rooted symmetric PSD P.
RealMatrix shifted_inverse(const RealMatrix& p, double sqrt_n) {
  const SymEig e = sym_eig(p);
  RealVector inv(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) inv(i) = 1.0 / (sqrt_n + std::max(e.values(i), 0.0));
  return e.vectors * inv.asDiagonal() * e.vectors.transpose();
}

using IntMatrix = std::vector<std::int64_t>;

// X * Y^t for sign matrices with equal column counts.
IntMatrix mul_t(const SignMatrix& x, const SignMatrix& y) {
  IntMatrix out(static_cast<std::size_t>(x.rows()) * static_cast<std::size_t>(y.rows()), 0);
  for (int i = 0; i < x.rows(); ++i)
    for (int k = 0; k < y.rows(); ++k) {
      std::int64_t dot = 0;
      for (int j = 0; j < x.cols(); ++j) dot += x(i, j) * y(k, j);
      out[static_cast<std::size_t>(i) * static_cast<std::size_t>(y.rows()) + static_cast<std::size_t>(k)] = dot;
    }
  return out;
}

IdentityReport compare_sum(std::string name, const IntMatrix& lhs1, const IntMatrix& lhs2, int dim,
                           std::int64_t diag) {
  std::int64_t worst = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < static_cast<int>(lhs1.size()) / dim; ++j) {
      const auto k = static_cast<std::size_t>(i) * (lhs1.size() / static_cast<std::size_t>(dim)) +
                     static_cast<std::size_t>(j);
      const std::int64_t want = (i == j) ? diag : 0;
      worst = std::max(worst, std::abs(lhs1[k] + lhs2[k] - want));
    }
  return {std::move(name), worst == 0, static_cast<double>(worst)};
}

}  // namespace

const char* to_string(Applicability a) noexcept {
  switch (a) {
    case Applicability::Applicable: return "applicable";
    case Applicability::SingularA: return "singular-A";
    case Applicability::NormTooLarge: return "norm-too-large";
  }
  return "unknown";
}

XaYa xa_ya(const SignMatrix& a, int n, const Tolerances& tol) {
  if (!a.square()) throw Error(ErrorKind::SizeMismatch, "xa_ya: A must be square");
  if (n <= a.rows()) throw Error(ErrorKind::Domain, "xa_ya: N must exceed r");
  const RealMatrix am = a.to_real();
  const PolarDecomposition pa = polar(am, tol);
  if (!pa.unique) throw Error(ErrorKind::Singular, "xa_ya: A is singular");
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  XaYa out;
  out.XA = shifted_sqrt_inverse(am.transpose() * am, sqrt_n) * pa.U.transpose();
  out.YA = shifted_sqrt_inverse(am * am.transpose(), sqrt_n);

  const RealMatrix inv_p = shifted_inverse(pa.T, sqrt_n);
  const RealMatrix xa2 = inv_p * pa.U.transpose();
  const RealMatrix ya2 = pa.U * inv_p * pa.U.transpose();
  out.path_deviation = std::max(max_abs(out.XA - xa2), max_abs(out.YA - ya2));
  return out;
}

ApplicabilityReport check_applicability(const SignMatrix& a, int n, const Tolerances& tol) {
  const RealVector s = singular_values(a.to_real());
  ApplicabilityReport out;
  out.norm_a = s.size() ? s(0) : 0.0;
  out.sigma_min_a = s.size() ? s(s.size() - 1) : 0.0;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  if (out.norm_a <= 0.0 || out.sigma_min_a < tol.singular * out.norm_a)
    out.status = Applicability::SingularA;
  else if (out.norm_a >= sqrt_n - tol.cross * sqrt_n)
    out.status = Applicability::NormTooLarge;
  return out;
}

ComplementFactors complement_polar(const PartitionedHadamard& p, const Tolerances& tol) {
  const SignMatrix a = p.a();
  const int n = p.order();
  const ApplicabilityReport app = check_applicability(a, n, tol);
  if (app.status == Applicability::SingularA) throw Error(ErrorKind::Singular, "complement_polar: A is singular");
  if (app.status == Applicability::NormTooLarge)
    throw Error(ErrorKind::Inapplicable, "complement_polar: ||A|| >= sqrt(N); use the generic polar oracle");

  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const XaYa xy = xa_ya(a, n, tol);
  const RealMatrix b = p.b().to_real();
  const RealMatrix c = p.c().to_real();
  const RealMatrix d = p.d_block().to_real();

  ComplementFactors f;
  f.XA = xy.XA;
  f.YA = xy.YA;
  f.E = c * f.XA * b;
  f.S = b.transpose() * f.YA * b;
  f.S = 0.5 * (f.S + f.S.transpose());
  f.U = (d - f.E) / sqrt_n;
  f.T = sqrt_n * RealMatrix::Identity(p.d(), p.d()) - f.S;
  f.norm_a = app.norm_a;
  f.applicable = true;
  return f;
}

std::vector<IdentityReport> gram_identities_check(const PartitionedHadamard& p) {
  const SignMatrix a = p.a(), b = p.b(), c = p.c(), d = p.d_block();
  const SignMatrix at = a.transpose(), ct = c.transpose();
  const std::int64_t n = p.order();
  std::vector<IdentityReport> out;
  out.push_back(compare_sum("AA^t+BB^t=NI", mul_t(a, a), mul_t(b, b), p.r(), n));
  out.push_back(compare_sum("CC^t+DD^t=NI", mul_t(c, c), mul_t(d, d), p.d(), n));
  {
    const IntMatrix ac = mul_t(a, c), bd = mul_t(b, d);
    std::int64_t worst = 0;
    for (std::size_t k = 0; k < ac.size(); ++k) worst = std::max(worst, std::abs(ac[k] + bd[k]));
    out.push_back({"AC^t+BD^t=0", worst == 0, static_cast<double>(worst)});
  }
  out.push_back(compare_sum("A^tA+C^tC=NI", mul_t(at, at), mul_t(ct, ct), p.r(), n));
  return out;
}

namespace {

// sa, sd: singular values of A/sqrt(N) and D/sqrt(N).
SingularValueMatch match_singular_values(const RealVector& sa, const RealVector& sd, double tol) {
  std::vector<double> small(sa.data(), sa.data() + sa.size());
  std::vector<double> large(sd.data(), sd.data() + sd.size());
  if (small.size() > large.size()) std::swap(small, large);

  SingularValueMatch out;
  while (large.size() > small.size()) {
    auto it = std::min_element(large.begin(), large.end(),
                               [](double x, double y) { return std::abs(x - 1.0) < std::abs(y - 1.0); });
    out.removed.push_back(*it);
    large.erase(it);
  }
  std::sort(small.begin(), small.end(), std::greater<>());
  std::sort(large.begin(), large.end(), std::greater<>());
  double worst = 0.0;
  for (double v : out.removed) worst = std::max(worst, std::abs(v - 1.0));
  for (std::size_t i = 0; i < small.size(); ++i) {
    out.pairs.emplace_back(small[i], large[i]);
    worst = std::max(worst, std::abs(small[i] - large[i]));
  }
  out.report = {"singular-value-complement", worst <= tol, worst};
  return out;
}

DeterminantReport compare_determinants(const PartitionedHadamard& p, const RealVector& sa, const RealVector& sd,
                                       double rel_tol) {
  const double n = p.order();
  const double scaled_a = sa.prod();
  const double scaled_d = sd.prod();

  DeterminantReport out;
  out.abs_det_a = scaled_a * std::pow(n, p.r() / 2.0);
  out.abs_det_d = scaled_d * std::pow(n, p.d() / 2.0);
  out.predicted_abs_det_d = out.abs_det_a * std::pow(n, (p.d() - p.r()) / 2.0);
  const double scale = std::max(scaled_a, scaled_d);
  const double rel = scale > 0.0 ? std::abs(scaled_a - scaled_d) / scale : 0.0;
  const bool both_singular = scale < 1e-9;
  out.report = {"det-complement", both_singular || rel <= rel_tol, both_singular ? 0.0 : rel};
  return out;
}

}  // namespace

SingularValueMatch singular_value_complement_check(const PartitionedHadamard& p, double tol) {
  return complementarity_checks(p, std::nullopt, tol).singular_values;
}

DeterminantReport det_complement_check(const PartitionedHadamard& p, double rel_tol) {
  return complementarity_checks(p, std::nullopt, 1e-8, rel_tol).determinant;
}

ComplementarityChecks complementarity_checks(const PartitionedHadamard& p, const std::optional<RealVector>& sigma_d,
                                             double sv_tol, double det_rel_tol) {
  const double sqrt_n = std::sqrt(static_cast<double>(p.order()));
  const RealVector sa = singular_values(p.a().to_real()) / sqrt_n;
  const RealVector sd = (sigma_d ? *sigma_d : singular_values(p.d_block().to_real())) / sqrt_n;
  return {match_singular_values(sa, sd, sv_tol), compare_determinants(p, sa, sd, det_rel_tol)};
}

Json to_json(const IdentityReport& r) {
  Json j;
  j["identity"] = r.identity;
  j["pass"] = r.pass;
  j["maxDeviation"] = r.max_deviation;
  return j;
}

Json to_json(const ComplementFactors& f) {
  Json j;
  j["applicable"] = f.applicable;
  j["normA"] = f.norm_a;
  j["XA"] = to_json(f.XA);
  j["YA"] = to_json(f.YA);
  j["E"] = to_json(f.E);
  j["S"] = to_json(f.S);
  j["U"] = to_json(f.U);
  j["T"] = to_json(f.T);
  j["einf"] = max_abs(f.E);
  return j;
}

}  // namespace hadlab
