#pragma once

namespace hadlab {

/// Absolute tolerances used throughout the library. The defaults leave at
/// least six digits of headroom for matrices of order <= 256.
struct Tolerances {
  double ortho = 1e-9;    // ||U^t U - I||_inf
  double sym = 1e-9;      // ||M - M^t||_inf
  double recon = 1e-9;    // reconstruction residuals
  double psd = 1e-9;      // allowed negative eigenvalue
  double singular = 1e-10;  // relative to sigma_max
  double zero = 1e-8;     // |U_ij| at or below is a zero entry
  double zero_band = 100.0;  // entries in (zero, zero*zero_band] are borderline zeros
  double strict = 1e-9;   // min eigenvalue above this is a strict maximum
  double cross = 1e-8;    // closed form vs. oracle agreement
};

inline constexpr int kDefaultMaxOrder = 4096;

}  // namespace hadlab
