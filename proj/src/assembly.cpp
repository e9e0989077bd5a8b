#include "tangent_llg/assembly.hpp"

#include <cmath>

namespace tangent_llg {

DmiForm parse_dmi_form(std::string_view name) {
  if (name == "none") return DmiForm::none;
  if (name == "bulk") return DmiForm::bulk;
  if (name == "interfacial") return DmiForm::interfacial;
  throw InvalidArgument("unknown DMI form '" + std::string(name) +
                        "' (expected bulk, interfacial or none)");
}

std::string_view to_string(DmiForm form) {
  switch (form) {
    case DmiForm::bulk:
      return "bulk";
    case DmiForm::interfacial:
      return "interfacial";
    case DmiForm::none:
      break;
  }
  return "none";
}

namespace {

Eigen::Matrix3d cross_matrix(const Vec3& g) {
  Eigen::Matrix3d B;
  B << 0.0, -g[2], g[1],  //
      g[2], 0.0, -g[0],   //
      -g[1], g[0], 0.0;
  return B;
}

// ∫_K λ_a λ_b λ_d / |K|
double triple_fraction(int a, int b, int d) {
  if (a == b && b == d) return 1.0 / 20.0;
  if (a == b || b == d || a == d) return 1.0 / 60.0;
  return 1.0 / 120.0;
}

void push_block(std::vector<Triplet>& t, Index row_vertex, Index col_vertex,
                const Eigen::Matrix3d& block) {
  for (Index r = 0; r < 3; ++r) {
    for (Index c = 0; c < 3; ++c) {
      const double v = block(static_cast<Eigen::Index>(r),
                             static_cast<Eigen::Index>(c));
      if (v != 0.0) t.push_back({3 * row_vertex + r, 3 * col_vertex + c, v});
    }
  }
}

SparseMatrix lift(const SparseMatrix& scalar) {
  std::vector<Triplet> t;
  t.reserve(3 * scalar.nonzeros());
  const auto off = scalar.offsets();
  const auto cols = scalar.column_indices();
  const auto vals = scalar.values();
  for (Index r = 0; r < scalar.rows(); ++r) {
    for (Index p = off[r]; p < off[r + 1]; ++p) {
      for (Index c = 0; c < 3; ++c) {
        t.push_back({3 * r + c, 3 * cols[p] + c, vals[p]});
      }
    }
  }
  return SparseMatrix::from_triplets(3 * scalar.rows(), 3 * scalar.cols(), t);
}

}  // namespace

std::array<Eigen::Matrix3d, 4> dmi_operator_blocks(
    DmiForm form, const std::array<Vec3, 4>& gradients) {
  std::array<Eigen::Matrix3d, 4> B;
  for (int a = 0; a < 4; ++a) {
    const Vec3& g = gradients[a];
    switch (form) {
      case DmiForm::bulk:
        B[a] = cross_matrix(g);
        break;
      case DmiForm::interfacial:
        B[a] << 0.0, 0.0, -g[0],  //
            0.0, 0.0, -g[1],      //
            g[0], g[1], 0.0;
        break;
      case DmiForm::none:
        B[a].setZero();
        break;
    }
  }
  return B;
}

FormSet assemble_static(const Mesh& mesh, DmiForm dmi_form, double chirality) {
  const Index nv = mesh.vertex_count();
  std::vector<Triplet> mass, stiff, dmi;
  mass.reserve(16 * mesh.cell_count());
  stiff.reserve(16 * mesh.cell_count());
  if (dmi_form != DmiForm::none) dmi.reserve(16 * 6 * mesh.cell_count());

  for (Index c = 0; c < mesh.cell_count(); ++c) {
    const Cell& cell = mesh.cell(c);
    const double vol = mesh.cell_volume(c);
    const auto& g = mesh.gradients(c);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        mass.push_back({cell[a], cell[b], vol * (a == b ? 0.1 : 0.05)});
        stiff.push_back({cell[a], cell[b], vol * g[a].dot(g[b])});
      }
    }
    if (dmi_form != DmiForm::none) {
      const auto B = dmi_operator_blocks(dmi_form, g);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          push_block(dmi, cell[a], cell[b], (chirality * vol / 4.0) * B[b]);
        }
      }
    }
  }

  FormSet forms;
  forms.scalar_mass = SparseMatrix::from_triplets(nv, nv, mass);
  forms.scalar_stiffness = SparseMatrix::from_triplets(nv, nv, stiff);
  forms.vector_mass = lift(forms.scalar_mass);
  forms.vector_stiffness = lift(forms.scalar_stiffness);
  forms.dmi = SparseMatrix::from_triplets(3 * nv, 3 * nv, dmi);
  const SparseMatrix dmi_t = forms.dmi.transpose();
  forms.dmi_symmetric =
      linear_combination({{1.0, &forms.dmi}, {1.0, &dmi_t}});
  forms.dmi_form = dmi_form;
  forms.chirality = chirality;
  forms.volume = mesh.volume();
  return forms;
}

SparseMatrix assemble_cross(const Mesh& mesh, const NodalVectorField& m) {
  const Index nv = mesh.vertex_count();
  if (m.vertex_count() != nv) {
    throw InvalidArgument("assemble_cross: field does not match mesh");
  }
  std::vector<Triplet> t;
  t.reserve(16 * 6 * mesh.cell_count());
  for (Index c = 0; c < mesh.cell_count(); ++c) {
    const Cell& cell = mesh.cell(c);
    const double vol = mesh.cell_volume(c);
    std::array<Vec3, 4> md;
    for (int d = 0; d < 4; ++d) md[d] = m.at(cell[d]);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        Vec3 mu = Vec3::Zero();
        for (int d = 0; d < 4; ++d) mu += triple_fraction(a, b, d) * md[d];
        push_block(t, cell[a], cell[b], cross_matrix(vol * mu));
      }
    }
  }
  return SparseMatrix::from_triplets(3 * nv, 3 * nv, t);
}

SparseMatrix assemble_weighted_mass(const Mesh& mesh,
                                    std::span<const double> weights) {
  const auto& rule = degree3_rule();
  const Index nq = rule.size();
  if (weights.size() != nq * mesh.cell_count()) {
    throw InvalidArgument("assemble_weighted_mass: expected " +
                          std::to_string(nq * mesh.cell_count()) +
                          " weights, got " + std::to_string(weights.size()));
  }
  const Index nv = mesh.vertex_count();
  std::vector<Triplet> t;
  t.reserve(16 * 3 * mesh.cell_count());
  for (Index c = 0; c < mesh.cell_count(); ++c) {
    const Cell& cell = mesh.cell(c);
    const double vol = mesh.cell_volume(c);
    Eigen::Matrix4d local = Eigen::Matrix4d::Zero();
    for (Index q = 0; q < nq; ++q) {
      const auto& p = rule.points[q];
      const double s = vol * rule.weights[q] * weights[c * nq + q];
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) local(a, b) += s * p[a] * p[b];
      }
    }
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        for (Index r = 0; r < 3; ++r) {
          t.push_back({3 * cell[a] + r, 3 * cell[b] + r, local(a, b)});
        }
      }
    }
  }
  return SparseMatrix::from_triplets(3 * nv, 3 * nv, t);
}

NodalVectorField interpolate_nodal(const Mesh& mesh,
                                   const std::function<Vec3(const Vec3&)>& f) {
  NodalVectorField out(mesh.vertex_count());
  for (Index z = 0; z < mesh.vertex_count(); ++z) out.set(z, f(mesh.vertex(z)));
  return out;
}

Vec3 skyrmion_like(const Vec3& x, const Vec3& centre, double radius) {
  const double r = std::hypot(x[0] - centre[0], x[1] - centre[1]);
  return r <= radius ? Vec3(0.0, 0.0, -1.0) : Vec3(0.0, 0.0, 1.0);
}

std::vector<Vec3> quadrature_points(const Mesh& mesh) {
  const auto& rule = degree3_rule();
  std::vector<Vec3> pts;
  pts.reserve(rule.size() * mesh.cell_count());
  for (Index c = 0; c < mesh.cell_count(); ++c) {
    const Cell& cell = mesh.cell(c);
    for (const auto& p : rule.points) {
      Vec3 x = Vec3::Zero();
      for (int a = 0; a < 4; ++a) x += p[a] * mesh.vertex(cell[a]);
      pts.push_back(x);
    }
  }
  return pts;
}

Vec3 evaluate(const Mesh& mesh, const NodalVectorField& m, Index c,
              const std::array<double, 4>& bary) {
  const Cell& cell = mesh.cell(c);
  Vec3 v = Vec3::Zero();
  for (int a = 0; a < 4; ++a) v += bary[a] * m.at(cell[a]);
  return v;
}

Eigen::Matrix3d cell_gradient(const Mesh& mesh, const NodalVectorField& m,
                              Index c) {
  const Cell& cell = mesh.cell(c);
  const auto& g = mesh.gradients(c);
  Eigen::Matrix3d G = Eigen::Matrix3d::Zero();
  for (int a = 0; a < 4; ++a) G += m.at(cell[a]) * g[a].transpose();
  return G;
}

}  // namespace tangent_llg
