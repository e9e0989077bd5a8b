#include "tangent_llg/field.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace tangent_llg {

NodalVectorField::NodalVectorField(Eigen::VectorXd values)
    : values_(std::move(values)) {
  if (values_.size() % 3 != 0) {
    throw InvalidArgument("nodal field length must be a multiple of 3");
  }
}

NodalVectorField NodalVectorField::uniform(Index vertex_count,
                                           const Vec3& value) {
  NodalVectorField f(vertex_count);
  for (Index z = 0; z < vertex_count; ++z) f.set(z, value);
  return f;
}

double NodalVectorField::max_unit_deviation() const {
  double d = 0.0;
  for (Index z = 0; z < vertex_count(); ++z) {
    d = std::max(d, std::abs(at(z).norm() - 1.0));
  }
  return d;
}

}  // namespace tangent_llg
