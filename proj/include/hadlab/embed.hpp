#pragma once

// Embedding sign matrices as submatrices of Walsh matrices.
//
// Index W_{2^d} by bit strings x, y in {0,1}^d (first bit most significant):
// (W)_{xy} = (-1)^{<x,y>}. The d rows x = e_i carry every sign vector of
// length d as a column, so any d x d matrix with distinct columns sits
// inside W_{2^d}. Repeated columns are routed to the R = 2^{ceil(log2 d)}
// copies of those rows inside W_R (x) W_{2^d}, whose first W_R row is all +.

#include "hadlab/json_writer.hpp"
#include "hadlab/matcore.hpp"

namespace hadlab {

struct Embedding {
  int exponent = 0;  // host is walsh(exponent)
  HadamardMatrix host = walsh(0);
  IndexList row_indices;  // 0-based, one per row of the target
  IndexList col_indices;  // 0-based, one per column of the target

  /// host[row_indices, col_indices] == target entrywise.
  bool verifies(const SignMatrix& target) const;
};

/// Host walsh(d). Throws Domain if D is not square or has repeated columns.
Embedding embed_distinct_columns(const SignMatrix& d, int max_order = kDefaultMaxOrder);

/// Host walsh(d + ceil(log2 d)), with ceil(log2 1) = 0.
Embedding embed_general(const SignMatrix& d, int max_order = kDefaultMaxOrder);

int ceil_log2(int v);

/// Indices written 1-based.
Json to_json(const Embedding& e);

}  // namespace hadlab
