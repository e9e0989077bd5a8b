#pragma once

#include "tangent_llg/field.hpp"
#include "tangent_llg/linalg.hpp"
#include "tangent_llg/mesh.hpp"
#include "tangent_llg/quadrature.hpp"

#include <functional>
#include <span>
#include <string_view>

namespace tangent_llg {

/// Which Lifshitz operator 𝒟 enters the DMI energy ⟨𝒟m, m⟩.
///   bulk:        𝒟u = curl u
///   interfacial: 𝒟u = (−∂₁u₃, −∂₂u₃, ∂₁u₁ + ∂₂u₂)
enum class DmiForm { none, bulk, interfacial };

DmiForm parse_dmi_form(std::string_view name);
std::string_view to_string(DmiForm form);

/// Per-cell 3×3 blocks B_a with 𝒟(φ_a u)|_K = B_a u for the hat function
/// of local vertex a.
std::array<Eigen::Matrix3d, 4> dmi_operator_blocks(
    DmiForm form, const std::array<Vec3, 4>& gradients);

/// State-independent matrices of the schemes.
struct FormSet {
  SparseMatrix scalar_mass;       ///< ⟨φ_z, φ_z'⟩
  SparseMatrix scalar_stiffness;  ///< ⟨∇φ_z, ∇φ_z'⟩
  SparseMatrix vector_mass;       ///< scalar_mass ⊗ I₃ on 3N unknowns
  SparseMatrix vector_stiffness;  ///< scalar_stiffness ⊗ I₃
  /// wᵀ dmi u = ⟨𝒟u, w⟩ (already multiplied by the chirality sign).
  SparseMatrix dmi;
  /// dmi + dmiᵀ
  SparseMatrix dmi_symmetric;
  DmiForm dmi_form = DmiForm::none;
  double chirality = 1.0;
  double volume = 0.0;
};

/// Exact P1 integration of the static forms. chirality = −1 negates the DMI
/// blocks (negative D).
FormSet assemble_static(const Mesh& mesh, DmiForm dmi_form,
                        double chirality = 1.0);

/// Matrix X with wᵀ X u = ⟨m × u, w⟩ for the piecewise-linear m; exact
/// (degree 3 integrand). Skew-symmetric.
SparseMatrix assemble_cross(const Mesh& mesh, const NodalVectorField& m);

/// ⟨weight · u, w⟩ on 3N unknowns with the weight given at the points of
/// degree3_rule(), cell-major: weights[c * rule.size() + q].
SparseMatrix assemble_weighted_mass(const Mesh& mesh,
                                    std::span<const double> weights);

NodalVectorField interpolate_nodal(const Mesh& mesh,
                                   const std::function<Vec3(const Vec3&)>& f);

/// Out-of-plane profile with a reversed core: (0,0,−1) for in-plane
/// distance r ≤ radius from centre, (0,0,1) otherwise.
Vec3 skyrmion_like(const Vec3& x, const Vec3& centre, double radius);

/// Physical coordinates of every quadrature point of degree3_rule(),
/// cell-major.
std::vector<Vec3> quadrature_points(const Mesh& mesh);

/// Value of the P1 interpolant of m at barycentric point bary of cell c.
Vec3 evaluate(const Mesh& mesh, const NodalVectorField& m, Index c,
              const std::array<double, 4>& bary);

/// ∇m on cell c as a 3×3 matrix G(i, j) = ∂_j m_i.
Eigen::Matrix3d cell_gradient(const Mesh& mesh, const NodalVectorField& m,
                              Index c);

}  // namespace tangent_llg
