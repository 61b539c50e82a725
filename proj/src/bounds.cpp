#include "hadlab/bounds.hpp"

#include <cmath>

#include "hadlab/numlin.hpp"

namespace hadlab {

namespace {

// Smallest multiple of 4 strictly above `value`.
int next_multiple_of_four(double value) {
  const double k = std::floor(value / 4.0) + 1.0;
  return static_cast<int>(std::max(k, 1.0)) * 4;
}

double c_based_threshold(int r, double c) {
  const double x = r * c;
  const double s = x + std::sqrt(x * x + 4.0);
  return r * r / 4.0 * s * s;
}

constexpr int kCriticalSearchLimit = 1 << 24;

}  // namespace

bool BoundReport::sound(double slack) const {
  if (!actual_einf) return true;
  for (const auto& b : {bound1, bound2, bound3})
    if (b && *b < *actual_einf - slack) return false;
  return true;
}

bool BoundReport::any_threshold_passes() const {
  for (const auto& t : thresholds)
    if (t.applicable && t.pass) return true;
  return false;
}

double polar_gap(const SignMatrix& a, int n) {
  const RealMatrix am = a.to_real();
  const PolarDecomposition p = polar(am);
  if (!p.unique) throw Error(ErrorKind::Singular, "polar_gap: A is singular");
  return max_abs(p.U - am / std::sqrt(static_cast<double>(n)));
}

BoundReport bound_e_inf(const SignMatrix& a, int n) {
  if (!a.square()) throw Error(ErrorKind::SizeMismatch, "bound_e_inf: A must be square");
  const int r = a.rows();
  if (r > n - r) throw Error(ErrorKind::Domain, "bound_e_inf: requires r <= N - r");
  BoundReport out;
  out.r = r;
  out.n = n;
  out.a_is_hadamard = is_hadamard(a);
  const double sr = std::sqrt(static_cast<double>(r));
  const double sn = std::sqrt(static_cast<double>(n));
  if (out.a_is_hadamard) out.bound1 = r * sr / (sr + sn);
  const double r2 = static_cast<double>(r) * r;
  if (r2 < n) {
    if (polar(a.to_real()).unique) {
      out.c = polar_gap(a, n);
      out.bound2 = r2 * *out.c * sn / (n - r2);
    }
    out.bound3 = r2 * (1.0 + sn) / (n - r2);
  }
  return out;
}

BoundReport bound_e_inf(int r, int n, bool hadamard) {
  if (r < 1 || r > n - r) throw Error(ErrorKind::Domain, "bound_e_inf: requires 1 <= r <= N - r");
  BoundReport out;
  out.r = r;
  out.n = n;
  out.a_is_hadamard = hadamard;
  const double sr = std::sqrt(static_cast<double>(r));
  const double sn = std::sqrt(static_cast<double>(n));
  const double r2 = static_cast<double>(r) * r;
  if (hadamard) out.bound1 = r * sr / (sr + sn);
  if (r2 < n) out.bound3 = r2 * (1.0 + sn) / (n - r2);
  return out;
}

BoundReport ahp_thresholds(int r, int n, const std::optional<SignMatrix>& a, bool assume_hadamard) {
  if (r < 1 || n < 1) throw Error(ErrorKind::Domain, "ahp_thresholds: r and N must be positive");
  if (a && (!a->square() || a->rows() != r))
    throw Error(ErrorKind::SizeMismatch, "ahp_thresholds: A must be r x r");
  BoundReport out;
  out.r = r;
  out.n = n;
  out.a_is_hadamard = a ? is_hadamard(*a) : assume_hadamard;

  ThresholdCheck had;
  had.name = "hadamard";
  had.applicable = out.a_is_hadamard;
  had.threshold = static_cast<double>(r) * (r - 1) * (r - 1);
  had.pass = had.applicable && n > had.threshold;
  had.critical_n = next_multiple_of_four(had.threshold);
  out.thresholds.push_back(had);

  ThresholdCheck cb;
  cb.name = "c-based";
  if (a && polar(a->to_real()).unique) {
    const RealMatrix am = a->to_real();
    const RealMatrix pol = polar(am).U;
    const auto gap = [&](int nn) { return max_abs(pol - am / std::sqrt(static_cast<double>(nn))); };
    out.c = gap(n);
    cb.applicable = true;
    cb.threshold = c_based_threshold(r, *out.c);
    cb.pass = n > cb.threshold;
    for (int nn = 4; nn <= kCriticalSearchLimit; nn += 4)
      if (nn > c_based_threshold(r, gap(nn))) {
        cb.critical_n = nn;
        break;
      }
  }
  out.thresholds.push_back(cb);

  ThresholdCheck gen;
  gen.name = "generic";
  const double s = r + std::sqrt(static_cast<double>(r) * r + 8.0);
  gen.applicable = true;
  gen.threshold = static_cast<double>(r) * r / 4.0 * s * s;
  gen.pass = n > gen.threshold;
  gen.critical_n = next_multiple_of_four(gen.threshold);
  out.thresholds.push_back(gen);
  return out;
}

BoundReport bound_report(const SignMatrix& a, int n, std::optional<double> actual_einf) {
  BoundReport out = ahp_thresholds(a.rows(), n, a);
  if (a.rows() <= n - a.rows()) {
    const BoundReport b = bound_e_inf(a, n);
    out.bound1 = b.bound1;
    out.bound2 = b.bound2;
    out.bound3 = b.bound3;
  }
  out.actual_einf = actual_einf;
  return out;
}

double hadamard_case_cubic_remark(int r, int n) {
  const double r2 = static_cast<double>(r) * r;
  if (!(r2 < n)) throw Error(ErrorKind::Domain, "hadamard_case_cubic_remark: requires r^2 < N");
  const double sr = std::sqrt(static_cast<double>(r));
  const double sn = std::sqrt(static_cast<double>(n));
  return (r * sr * sn - r2) / (n - r2);
}

Json to_json(const BoundReport& b) {
  const auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  Json j;
  j["r"] = b.r;
  j["N"] = b.n;
  j["aIsHadamard"] = b.a_is_hadamard;
  j["c"] = opt(b.c);
  j["cComputedAtN"] = b.c ? Json(b.n) : Json(nullptr);
  j["bound1"] = opt(b.bound1);
  j["bound2"] = opt(b.bound2);
  j["bound3"] = opt(b.bound3);
  j["actualEinf"] = opt(b.actual_einf);
  Json th = Json::array();
  for (const auto& t : b.thresholds) {
    Json x;
    x["condition"] = t.name;
    x["applicable"] = t.applicable;
    x["threshold"] = t.threshold;
    x["pass"] = t.pass;
    x["criticalN"] = t.critical_n ? Json(*t.critical_n) : Json(nullptr);
    th.push_back(std::move(x));
  }
  j["thresholds"] = std::move(th);
  return j;
}

}  // namespace hadlab
