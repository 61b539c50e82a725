#pragma once

// Closed forms of E and S for the invertible patterns of size r = 1, 2, 3:
//
//   (1) A = [+]            B = {1}                    sizes (N-1)
//   (2) A = [+ +; + -]     B = {1 1; 1 -1}            sizes (N/2-1, N/2-1)
//   (3) A = [+ + +; + - +; + + -]
//       B = {1 1 1 1; 1 1 -1 -1; 1 -1 1 -1}          sizes (N/4-1, N/4-1, N/4-1, N/4)
//
// with C = B^t in every case.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hadlab/json_writer.hpp"
#include "hadlab/matcore.hpp"

namespace hadlab {

struct SmallRForm {
  int r = 0;
  int n = 0;
  RealMatrix E;
  RealMatrix S;
  std::vector<int> block_sizes;
  std::map<std::string, double> scalars;  // x, y, z, t for r = 3
};

/// E = S = {1/(1+sqrt(N))}_{N-1}. N = 2 or N >= 4 with N % 4 == 0.
SmallRForm closed_form_r1(int n);
/// N >= 4, N % 4 == 0.
SmallRForm closed_form_r2(int n);
/// N >= 8, N % 4 == 0.
SmallRForm closed_form_r3(int n);
SmallRForm closed_form(int r, int n);

/// The r x r pattern A_(r) for r in {1, 2, 3}.
SignMatrix small_pattern(int r);

/// Eigenvalues of T = sqrt(N) I - S, ascending:
/// r = 1 -> {1, sqrt(N) x (N-2)}, r = 2 -> {sqrt(2) x 2, sqrt(N) x (N-4)}.
std::vector<double> spectrum_T(int r, int n);

/// A copy of H brought into the layout of pattern (r): rows and columns
/// 0..r-1 hold A_(r), the remaining columns (rows) are grouped by the
/// column (row) blocks of B (C) in order.
struct PatternRealization {
  int r = 0;
  SignMatrix arranged;
  IndexList row_order;  // arranged row i is normalized-H row row_order[i]
  IndexList col_order;
  PartitionedHadamard split() const;
};

/// Searches row/column permutations of normalize(H) for pattern (r).
/// Returns nullopt if H has no such arrangement.
std::optional<PatternRealization> realize_pattern(const HadamardMatrix& h, int r);

Json to_json(const SmallRForm& f);

}  // namespace hadlab
