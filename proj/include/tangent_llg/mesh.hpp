#pragma once

#include "tangent_llg/common.hpp"

#include <array>
#include <filesystem>
#include <vector>

namespace tangent_llg {

using Cell = std::array<Index, 4>;

/// Tetrahedral mesh in nondimensional length units (1 unit = 1 nm).
///
/// Construction validates the invariants: indices in range, four distinct
/// vertices per cell and strictly positive signed volume
/// det[x1-x0, x2-x0, x3-x0] / 6. The mesh is immutable afterwards.
class Mesh {
 public:
  Mesh() = default;
  Mesh(std::vector<Vec3> vertices, std::vector<Cell> cells);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Cell>& cells() const { return cells_; }
  Index vertex_count() const { return vertices_.size(); }
  Index cell_count() const { return cells_.size(); }

  const Vec3& vertex(Index z) const { return vertices_[z]; }
  const Cell& cell(Index c) const { return cells_[c]; }

  double cell_volume(Index c) const { return volumes_[c]; }
  double volume() const;

  /// Gradients of the four barycentric (hat) functions on cell c.
  const std::array<Vec3, 4>& gradients(Index c) const { return gradients_[c]; }

  /// Longest edge of cell c.
  double cell_diameter(Index c) const;

  bool operator==(const Mesh& other) const {
    return vertices_ == other.vertices_ && cells_ == other.cells_;
  }

 private:
  std::vector<Vec3> vertices_;
  std::vector<Cell> cells_;
  std::vector<double> volumes_;
  std::vector<std::array<Vec3, 4>> gradients_;
};

double signed_volume(const Vec3& a, const Vec3& b, const Vec3& c,
                     const Vec3& d);

struct BoxSpec {
  std::array<int, 3> cells{1, 1, 1};
  Vec3 lengths{1.0, 1.0, 1.0};
};

/// Type I: box split into cubes, each cube into six Kuhn tetrahedra around
/// the (0,0,0)-(1,1,1) diagonal. Every tetrahedron has three mutually
/// perpendicular edges.
Mesh generate_type1(const BoxSpec& box);

/// Type II: the type I split with the main diagonal of every cube bisected,
/// giving twelve tetrahedra per cube sharing the cube centre.
Mesh generate_type2(const BoxSpec& box);

/// ASCII format: "tetmesh 1", "<nv> <nc>", nv lines "x y z", nc lines of
/// four 0-based indices. Coordinates are written with 17 significant digits.
Mesh load_mesh(const std::filesystem::path& path);
void save_mesh(const Mesh& mesh, const std::filesystem::path& path);

struct MeshQualityReport {
  double h_max = 0.0;
  double h_min = 0.0;
  bool angle_condition_holds = true;
  /// Most positive off-diagonal entry of the scalar stiffness matrix.
  double worst_offdiag = 0.0;
  Index offending_pairs = 0;
};

inline constexpr double kAngleConditionTolerance = 1e-12;

MeshQualityReport analyze_mesh(const Mesh& mesh,
                               double tolerance = kAngleConditionTolerance);

}  // namespace tangent_llg
