#pragma once

// Dense SVD, polar decomposition, PSD square root and PSD testing. These are
// the numerical oracles every closed form in the library is checked against.

#include "hadlab/matcore.hpp"

namespace hadlab {

/// M = V * diag(singular_values) * W^t, singular values non-increasing.
struct Svd {
  RealMatrix V;
  RealVector singular_values;
  RealMatrix W;
};

/// M = U * T with U orthogonal and T symmetric positive semidefinite.
struct PolarDecomposition {
  RealMatrix U;
  RealMatrix T;
  double residual = 0.0;  // ||M - U T||_inf
  RealVector singular_values;  // of M, non-increasing
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  /// False when sigma_min < singular * sigma_max; U is then one of many.
  bool unique = true;
};

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
  double asymmetry = 0.0;  // ||M - M^t||_inf
};

/// Symmetric eigendecomposition, eigenvalues ascending.
struct SymEig {
  RealVector values;
  RealMatrix vectors;
};

Svd svd(const RealMatrix& m);
/// Singular values only, non-increasing.
RealVector singular_values(const RealMatrix& m);

/// Pol(M) = V W^t, T = W diag(sigma) W^t.
PolarDecomposition polar(const RealMatrix& m, const Tolerances& tol = {});

/// Orthogonal polar factor by the scaled Newton iteration
/// X <- (zeta X + X^{-t} / zeta) / 2. Independent of the SVD route.
/// Throws Singular for singular input, Convergence after `max_iter` steps.
RealMatrix polar_newton(const RealMatrix& m, int max_iter = 100);

/// Eigendecomposition of the symmetric part (M + M^t) / 2.
SymEig sym_eig(const RealMatrix& m);

/// Symmetric PSD square root via eigendecomposition with negative
/// eigenvalues clamped to 0. Throws Domain if P is asymmetric beyond
/// tol.sym or has an eigenvalue below -tol.psd.
RealMatrix psd_sqrt(const RealMatrix& p, const Tolerances& tol = {});

/// Checks (M + M^t)/2 >= -tol via its smallest eigenvalue.
PsdReport is_psd(const RealMatrix& m, double tol = 1e-9);

/// |det M| as the product of singular values.
double abs_det(const RealMatrix& m);

/// ||M^t M - I||_inf
double orthogonality_defect(const RealMatrix& m);

}  // namespace hadlab
