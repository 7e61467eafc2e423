#pragma once

#include "bdc/gadgets.hpp"
#include "bdc/matrix.hpp"

namespace bdc {

/// Grenet's ABP for per_m: one vertex per subset of [m] (source = empty
/// set, target = [m]), edge v_I -> v_{I+j} labeled x_{|I|+1, j}. Vertices
/// are ordered by subset size, then by subset bitmask. Grid naming of
/// width m. Path value (-1)^(m-1) per_m. Requires 1 <= m <= 5.
Abp grenet_abp(int m);

/// Subset ABP for HC_{m+1}: source, one vertex v_(I,i) per nonempty
/// I subset of [m] and i in I, target. Vertices ordered by (|I|, I, i).
/// Grid naming of width m+1. Requires 1 <= m <= 4.
Abp hc_abp(int m);

/// The hand-made HC_2 (2x2) and HC_3 (3x3) matrices.
VarMatrix explicit_hc_matrix(int m);

// Published example matrices (grid naming, width 3 unless noted).

/// The sparse 7x7 binary variable matrix with determinant per_3.
VarMatrix grenet7x7();
/// The 3x3 matrix with determinant per_2 (width 2).
VarMatrix per2_example_matrix();
/// The integer matrix [[3,0,-2],[0,x1,0],[x1,0,x2]] with determinant
/// 3*x1*x2 + 2*x1^2 (sequential naming).
VarMatrix fig1_matrix();
/// A binary variable 7x7 matrix with det = per_3 together with unimodular
/// g, h such that g*A*h == grenet7x7().
VarMatrix uniqueness_example_a();
IntMatrix uniqueness_example_g();
IntMatrix uniqueness_example_h();

}  // namespace bdc
