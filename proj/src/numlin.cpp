#include "hadlab/numlin.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace hadlab {

namespace {

void require_finite(const RealMatrix& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorKind::Domain, std::string(what) + ": matrix has non-finite entries");
}

void require_square(const RealMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::SizeMismatch, std::string(what) + ": matrix must be square");
}

}  // namespace

Svd svd(const RealMatrix& m) {
  require_finite(m, "svd");
  if (m.size() == 0) return {RealMatrix(m.rows(), m.rows()), RealVector(0), RealMatrix(m.cols(), m.cols())};
  Eigen::JacobiSVD<RealMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Convergence, "svd did not converge");
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

RealVector singular_values(const RealMatrix& m) {
  require_finite(m, "singular_values");
  if (m.size() == 0) return RealVector(0);
  Eigen::JacobiSVD<RealMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Convergence, "svd did not converge");
  return solver.singularValues();
}

PolarDecomposition polar(const RealMatrix& m, const Tolerances& tol) {
  require_square(m, "polar");
  const Svd f = svd(m);
  PolarDecomposition out;
  out.U = f.V * f.W.transpose();
  out.T = f.W * f.singular_values.asDiagonal() * f.W.transpose();
  out.T = 0.5 * (out.T + out.T.transpose());
  out.residual = max_abs(m - out.U * out.T);
  out.singular_values = f.singular_values;
  if (f.singular_values.size() > 0) {
    out.sigma_max = f.singular_values(0);
    out.sigma_min = f.singular_values(f.singular_values.size() - 1);
  }
  out.unique = out.sigma_max > 0.0 && out.sigma_min >= tol.singular * out.sigma_max;
  return out;
}

RealMatrix polar_newton(const RealMatrix& m, int max_iter) {
  require_square(m, "polar_newton");
  require_finite(m, "polar_newton");
  RealMatrix x = m;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::FullPivLU<RealMatrix> lu(x);
    if (!lu.isInvertible()) throw Error(ErrorKind::Singular, "polar_newton: matrix is singular");
    const RealMatrix inv = lu.inverse();
    const double zeta = std::sqrt(std::sqrt(inv.squaredNorm() / x.squaredNorm()));
    const RealMatrix next = 0.5 * (zeta * x + inv.transpose() / zeta);
    const double step = (next - x).norm();
    x = next;
    if (step <= 1e-10 * x.norm()) return x;
  }
  throw Error(ErrorKind::Convergence, "polar_newton: no convergence");
}

SymEig sym_eig(const RealMatrix& m) {
  require_square(m, "sym_eig");
  require_finite(m, "sym_eig");
  if (m.size() == 0) return {RealVector(0), RealMatrix(0, 0)};
  const RealMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Convergence, "eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealMatrix psd_sqrt(const RealMatrix& p, const Tolerances& tol) {
  require_square(p, "psd_sqrt");
  const double asym = max_abs(p - p.transpose());
  if (asym > tol.sym) throw Error(ErrorKind::Domain, "psd_sqrt: matrix is not symmetric");
  const SymEig e = sym_eig(p);
  if (e.values.size() > 0 && e.values(0) < -tol.psd)
    throw Error(ErrorKind::Domain, "psd_sqrt: matrix has a negative eigenvalue");
  const RealVector roots = e.values.cwiseMax(0.0).cwiseSqrt();
  RealMatrix r = e.vectors * roots.asDiagonal() * e.vectors.transpose();
  return 0.5 * (r + r.transpose());
}

PsdReport is_psd(const RealMatrix& m, double tol) {
  require_square(m, "is_psd");
  PsdReport out;
  out.asymmetry = max_abs(m - m.transpose());
  const SymEig e = sym_eig(m);
  out.min_eigenvalue = e.values.size() ? e.values(0) : 0.0;
  out.psd = out.min_eigenvalue >= -tol;
  return out;
}

double abs_det(const RealMatrix& m) {
  require_square(m, "abs_det");
  const RealVector s = singular_values(m);
  double p = 1.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) p *= s(i);
  return p;
}

double orthogonality_defect(const RealMatrix& m) {
  return max_abs(m.transpose() * m - RealMatrix::Identity(m.cols(), m.cols()));
}

}  // namespace hadlab
