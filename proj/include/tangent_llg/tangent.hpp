#pragma once

#include "tangent_llg/field.hpp"
#include "tangent_llg/linalg.hpp"

#include <vector>

namespace tangent_llg {

/// Orthonormal pair (t1, t2) per vertex spanning the plane orthogonal to
/// m(z). The columns of the block-diagonal 3N×2N matrix T built from the
/// pairs form a basis of the discrete tangent space K_h(m).
struct TangentFrame {
  std::vector<Vec3> t1;
  std::vector<Vec3> t2;

  Index vertex_count() const { return t1.size(); }
};

/// Smallest-component axis rule: t1 = normalize(e_j − (e_j·m̂)m̂) with j the
/// index of the smallest |m_j(z)|, t2 = m̂ × t1. Throws DegenerateState when
/// |m(z)| < 1/2.
TangentFrame build_frame(const NodalVectorField& m);

struct ReducedSystem {
  SparseMatrix matrix;  ///< Tᵀ A T
  Eigen::VectorXd rhs;  ///< Tᵀ b
};

ReducedSystem reduce(const SparseMatrix& A, const Eigen::VectorXd& b,
                     const TangentFrame& frame);

/// Tᵀ w for a 3N vector.
Eigen::VectorXd restrict_to_frame(const Eigen::VectorXd& w,
                                  const TangentFrame& frame);

/// v(z) = c(2z) t1(z) + c(2z+1) t2(z).
NodalVectorField expand(const Eigen::VectorXd& c, const TangentFrame& frame);

/// Nodewise w(z)/|w(z)|. Throws DegenerateState when |w(z)| < 1e-12.
NodalVectorField nodal_projection(const NodalVectorField& w);

struct GeometricResiduals {
  /// max_z |m_new − m| − k|v|
  double step_bound = 0.0;
  /// max_z |m_new − m − kv| − k²|v|²/2
  double second_order_bound = 0.0;
};

GeometricResiduals geometric_residuals(const NodalVectorField& m,
                                       const NodalVectorField& v,
                                       const NodalVectorField& m_new,
                                       double k);

}  // namespace tangent_llg
