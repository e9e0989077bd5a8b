#pragma once

#include "tangent_llg/common.hpp"

#include <array>
#include <vector>

namespace tangent_llg {

/// Quadrature rule on a tetrahedron in barycentric coordinates. Weights are
/// fractions of the cell volume and sum to one.
struct TetQuadrature {
  std::vector<std::array<double, 4>> points;
  std::vector<double> weights;

  Index size() const { return weights.size(); }
};

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int n, std::vector<double>& nodes,
                         std::vector<double>& weights);

/// Collapsed-cube (Duffy) product rule with positive weights. With
/// (3, 3, 2) points it integrates polynomials of degree 3 exactly.
TetQuadrature collapsed_rule(int nu, int nv, int nw);

/// The fixed rule used for every state-dependent coefficient.
const TetQuadrature& degree3_rule();

}  // namespace tangent_llg
