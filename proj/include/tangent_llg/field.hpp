#pragma once

#include "tangent_llg/common.hpp"

#include <Eigen/Core>

namespace tangent_llg {

/// Piecewise-linear vector field stored by its nodal values, vertex-major
/// and component-minor: values[3z + c].
class NodalVectorField {
 public:
  NodalVectorField() = default;
  explicit NodalVectorField(Index vertex_count)
      : values_(Eigen::VectorXd::Zero(3 * static_cast<Eigen::Index>(vertex_count))) {}
  explicit NodalVectorField(Eigen::VectorXd values);

  static NodalVectorField uniform(Index vertex_count, const Vec3& value);

  Index vertex_count() const { return static_cast<Index>(values_.size()) / 3; }

  Vec3 at(Index z) const { return values_.segment<3>(3 * static_cast<Eigen::Index>(z)); }
  void set(Index z, const Vec3& v) {
    values_.segment<3>(3 * static_cast<Eigen::Index>(z)) = v;
  }

  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  /// max_z | |value(z)| - 1 |
  double max_unit_deviation() const;
  bool is_admissible(double tolerance = 1e-12) const {
    return max_unit_deviation() <= tolerance;
  }

  NodalVectorField operator-() const { return NodalVectorField(Eigen::VectorXd(-values_)); }

 private:
  Eigen::VectorXd values_;
};

}  // namespace tangent_llg
