#pragma once

#include "tangent_llg/mesh.hpp"
#include "tangent_llg/physics.hpp"

#include <string>
#include <string_view>

namespace tangent_llg {

enum class SchemeKind { tps1, pf_tps1, tps2 };

SchemeKind parse_scheme_kind(std::string_view name);
std::string_view to_string(SchemeKind kind);

struct SchemeChoice {
  SchemeKind kind = SchemeKind::tps1;
  /// Implicitness of the exchange term; TPS1 and PF-TPS1 only.
  double theta = 1.0;
  /// TPS2 artificial stabilization ρ(k); off means ρ ≡ 0.
  bool stabilization_on = true;

  bool operator==(const SchemeChoice&) const = default;
};

enum class MeshKind { type1, type2, file };

struct MeshSource {
  MeshKind kind = MeshKind::type1;
  BoxSpec box;
  std::string path;

  /// Compares only the fields the active kind uses.
  bool operator==(const MeshSource& o) const {
    if (kind != o.kind) return false;
    if (kind == MeshKind::file) return path == o.path;
    return box.cells == o.box.cells && box.lengths == o.box.lengths;
  }
};

enum class InitialKind { uniform, skyrmion, file };

struct InitialCondition {
  InitialKind kind = InitialKind::uniform;
  Vec3 value{0.0, 0.0, 1.0};
  double radius = 0.0;
  /// In-plane centre of the reversed core; unset means the mesh's bounding
  /// box centre.
  std::optional<Vec3> centre;
  std::string path;

  /// Compares only the fields the active kind uses.
  bool operator==(const InitialCondition& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case InitialKind::uniform:
        return value == o.value;
      case InitialKind::skyrmion:
        return radius == o.radius &&
               centre.has_value() == o.centre.has_value() &&
               (!centre || *centre == *o.centre);
      case InitialKind::file:
        break;
    }
    return path == o.path;
  }
};

/// Complete description of one simulation. All quantities nondimensional;
/// lengths in the mesh unit (nm).
struct SimConfig {
  SchemeChoice scheme;
  double k = 0.0;
  double T = 0.0;
  MaterialParams material;
  MeshSource mesh;
  InitialCondition initial;
  Index output_every = 1;
  double solver_tol = 1e-10;
  std::string output_dir = "out";

  bool operator==(const SimConfig& o) const;
};

}  // namespace tangent_llg
