#include "tangent_llg/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace tangent_llg {

void gauss_legendre_unit(int n, std::vector<double>& nodes,
                         std::vector<double>& weights) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre order must be >= 1");
  nodes.assign(static_cast<Index>(n), 0.0);
  weights.assign(static_cast<Index>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Map [-1, 1] -> [0, 1].
    nodes[static_cast<Index>(i)] = 0.5 * (1.0 - x);
    weights[static_cast<Index>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

TetQuadrature collapsed_rule(int nu, int nv, int nw) {
  std::vector<double> xu, wu, xv, wv, xw, ww;
  gauss_legendre_unit(nu, xu, wu);
  gauss_legendre_unit(nv, xv, wv);
  gauss_legendre_unit(nw, xw, ww);
  TetQuadrature rule;
  for (Index a = 0; a < xu.size(); ++a) {
    for (Index b = 0; b < xv.size(); ++b) {
      for (Index c = 0; c < xw.size(); ++c) {
        const double u = xu[a], v = xv[b], w = xw[c];
        const double x = u;
        const double y = v * (1.0 - u);
        const double z = w * (1.0 - u) * (1.0 - v);
        // Reference volume is 1/6, so weight fraction = 6 * jacobian * w.
        const double weight =
            6.0 * wu[a] * wv[b] * ww[c] * (1.0 - u) * (1.0 - u) * (1.0 - v);
        rule.points.push_back({1.0 - x - y - z, x, y, z});
        rule.weights.push_back(weight);
      }
    }
  }
  return rule;
}

const TetQuadrature& degree3_rule() {
  static const TetQuadrature rule = collapsed_rule(3, 3, 2);
  return rule;
}

}  // namespace tangent_llg
