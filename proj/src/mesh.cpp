#include "tangent_llg/mesh.hpp"

#include "tangent_llg/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace tangent_llg {

double signed_volume(const Vec3& a, const Vec3& b, const Vec3& c,
                     const Vec3& d) {
  return (b - a).dot((c - a).cross(d - a)) / 6.0;
}

Mesh::Mesh(std::vector<Vec3> vertices, std::vector<Cell> cells)
    : vertices_(std::move(vertices)), cells_(std::move(cells)) {
  const Index nv = vertices_.size();
  volumes_.reserve(cells_.size());
  gradients_.reserve(cells_.size());
  for (Index c = 0; c < cells_.size(); ++c) {
    const Cell& cell = cells_[c];
    for (int i = 0; i < 4; ++i) {
      if (cell[i] >= nv) {
        throw InvalidArgument("cell " + std::to_string(c) +
                              ": index out of range (" +
                              std::to_string(cell[i]) + " >= " +
                              std::to_string(nv) + ")");
      }
      for (int j = 0; j < i; ++j) {
        if (cell[i] == cell[j]) {
          throw InvalidArgument("cell " + std::to_string(c) +
                                ": duplicate vertex " +
                                std::to_string(cell[i]));
        }
      }
    }
    const Vec3& x0 = vertices_[cell[0]];
    Eigen::Matrix3d J;
    J.col(0) = vertices_[cell[1]] - x0;
    J.col(1) = vertices_[cell[2]] - x0;
    J.col(2) = vertices_[cell[3]] - x0;
    const double vol = J.determinant() / 6.0;
    if (!(vol > 0.0)) {
      throw InvalidArgument("cell " + std::to_string(c) +
                            ": inverted or degenerate element (signed volume " +
                            std::to_string(vol) + ")");
    }
    volumes_.push_back(vol);
    const Eigen::Matrix3d Jinv = J.inverse();
    std::array<Vec3, 4> g;
    g[1] = Jinv.row(0).transpose();
    g[2] = Jinv.row(1).transpose();
    g[3] = Jinv.row(2).transpose();
    g[0] = -(g[1] + g[2] + g[3]);
    gradients_.push_back(g);
  }
}

double Mesh::volume() const {
  double v = 0.0;
  for (double x : volumes_) v += x;
  return v;
}

double Mesh::cell_diameter(Index c) const {
  const Cell& cell = cells_[c];
  double d = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      d = std::max(d, (vertices_[cell[i]] - vertices_[cell[j]]).norm());
    }
  }
  return d;
}

namespace {

void check_box(const BoxSpec& box) {
  for (int a = 0; a < 3; ++a) {
    if (box.cells[a] < 1) {
      throw InvalidArgument("cell count per axis must be >= 1");
    }
    if (!(box.lengths[a] > 0.0)) {
      throw InvalidArgument("box lengths must be positive");
    }
  }
}

struct Grid {
  int nx, ny, nz;
  Index id(int i, int j, int k) const {
    return static_cast<Index>(i) +
           static_cast<Index>(nx + 1) *
               (static_cast<Index>(j) +
                static_cast<Index>(ny + 1) * static_cast<Index>(k));
  }
};

std::vector<Vec3> grid_vertices(const BoxSpec& box) {
  const auto [nx, ny, nz] = box.cells;
  const Vec3 h(box.lengths[0] / nx, box.lengths[1] / ny, box.lengths[2] / nz);
  std::vector<Vec3> v;
  v.reserve(static_cast<Index>(nx + 1) * (ny + 1) * (nz + 1));
  for (int k = 0; k <= nz; ++k) {
    for (int j = 0; j <= ny; ++j) {
      for (int i = 0; i <= nx; ++i) v.emplace_back(i * h[0], j * h[1], k * h[2]);
    }
  }
  return v;
}

// Kuhn paths 0 -> e_a -> e_a + e_b -> (1,1,1), one per axis permutation.
constexpr std::array<std::array<int, 3>, 6> kPermutations{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

template <typename Emit>
void for_each_kuhn_tet(const BoxSpec& box, Emit&& emit) {
  const auto [nx, ny, nz] = box.cells;
  const Grid grid{nx, ny, nz};
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const Index cube = static_cast<Index>(i) +
                           static_cast<Index>(nx) *
                               (static_cast<Index>(j) +
                                static_cast<Index>(ny) * static_cast<Index>(k));
        for (const auto& perm : kPermutations) {
          std::array<int, 3> corner{i, j, k};
          std::array<Index, 4> tet{};
          tet[0] = grid.id(corner[0], corner[1], corner[2]);
          for (int s = 0; s < 3; ++s) {
            ++corner[perm[s]];
            tet[s + 1] = grid.id(corner[0], corner[1], corner[2]);
          }
          emit(cube, tet);
        }
      }
    }
  }
}

void orient(const std::vector<Vec3>& v, Cell& c) {
  if (signed_volume(v[c[0]], v[c[1]], v[c[2]], v[c[3]]) < 0.0) {
    std::swap(c[2], c[3]);
  }
}

}  // namespace

Mesh generate_type1(const BoxSpec& box) {
  check_box(box);
  auto vertices = grid_vertices(box);
  std::vector<Cell> cells;
  cells.reserve(6 * static_cast<Index>(box.cells[0]) * box.cells[1] *
                box.cells[2]);
  for_each_kuhn_tet(box, [&](Index, Cell tet) {
    orient(vertices, tet);
    cells.push_back(tet);
  });
  return Mesh(std::move(vertices), std::move(cells));
}

Mesh generate_type2(const BoxSpec& box) {
  check_box(box);
  auto vertices = grid_vertices(box);
  const Index grid_count = vertices.size();
  const Index cubes =
      static_cast<Index>(box.cells[0]) * box.cells[1] * box.cells[2];
  // Cube centres follow the grid vertices, one per cube in cube order.
  vertices.resize(grid_count + cubes);
  std::vector<Cell> cells;
  cells.reserve(12 * cubes);
  for_each_kuhn_tet(box, [&](Index cube, const Cell& tet) {
    const Index centre = grid_count + cube;
    vertices[centre] = 0.5 * (vertices[tet[0]] + vertices[tet[3]]);
    Cell lower{tet[0], tet[1], tet[2], centre};
    Cell upper{centre, tet[1], tet[2], tet[3]};
    orient(vertices, lower);
    orient(vertices, upper);
    cells.push_back(lower);
    cells.push_back(upper);
  });
  return Mesh(std::move(vertices), std::move(cells));
}

Mesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file " + path.string());

  Index line_no = 0;
  std::string line;
  auto next_line = [&]() -> std::istringstream {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos) return std::istringstream(line);
    }
    throw LoadError(path.string() + ":" + std::to_string(line_no + 1) +
                    ": unexpected end of file");
  };
  auto fail = [&](const std::string& what) -> LoadError {
    return LoadError(path.string() + ":" + std::to_string(line_no) + ": " +
                     what);
  };

  {
    auto s = next_line();
    std::string magic;
    int version = 0;
    if (!(s >> magic >> version) || magic != "tetmesh" || version != 1) {
      throw fail("expected header 'tetmesh 1'");
    }
  }
  Index nv = 0, nc = 0;
  {
    auto s = next_line();
    long long a = -1, b = -1;
    if (!(s >> a >> b) || a < 0 || b < 0) {
      throw fail("expected '<vertex count> <cell count>'");
    }
    nv = static_cast<Index>(a);
    nc = static_cast<Index>(b);
  }
  std::vector<Vec3> vertices(nv);
  for (Index i = 0; i < nv; ++i) {
    auto s = next_line();
    if (!(s >> vertices[i][0] >> vertices[i][1] >> vertices[i][2])) {
      throw fail("expected three coordinates");
    }
  }
  std::vector<Cell> cells(nc);
  for (Index c = 0; c < nc; ++c) {
    auto s = next_line();
    std::array<long long, 4> idx{};
    if (!(s >> idx[0] >> idx[1] >> idx[2] >> idx[3])) {
      throw fail("expected four vertex indices");
    }
    for (int a = 0; a < 4; ++a) {
      if (idx[a] < 0 || static_cast<Index>(idx[a]) >= nv) {
        throw fail("index out of range (" + std::to_string(idx[a]) +
                   " not in [0, " + std::to_string(nv) + "))");
      }
      cells[c][a] = static_cast<Index>(idx[a]);
    }
    const Cell& cc = cells[c];
    if (cc[0] == cc[1] || cc[0] == cc[2] || cc[0] == cc[3] || cc[1] == cc[2] ||
        cc[1] == cc[3] || cc[2] == cc[3]) {
      throw fail("duplicate vertex in cell");
    }
    if (!(signed_volume(vertices[cc[0]], vertices[cc[1]], vertices[cc[2]],
                        vertices[cc[3]]) > 0.0)) {
      throw fail("inverted or degenerate element");
    }
  }
  return Mesh(std::move(vertices), std::move(cells));
}

void save_mesh(const Mesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mesh file " + path.string());
  out << "tetmesh 1\n" << mesh.vertex_count() << ' ' << mesh.cell_count() << '\n';
  out << std::setprecision(17);
  for (const auto& v : mesh.vertices()) {
    out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  }
  for (const auto& c : mesh.cells()) {
    out << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

MeshQualityReport analyze_mesh(const Mesh& mesh, double tolerance) {
  MeshQualityReport report;
  report.h_min = std::numeric_limits<double>::infinity();
  std::vector<Triplet> triplets;
  triplets.reserve(12 * mesh.cell_count());
  for (Index c = 0; c < mesh.cell_count(); ++c) {
    const double d = mesh.cell_diameter(c);
    report.h_max = std::max(report.h_max, d);
    report.h_min = std::min(report.h_min, d);
    const auto& g = mesh.gradients(c);
    const Cell& cell = mesh.cell(c);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        if (a == b) continue;
        triplets.push_back(
            {cell[a], cell[b], mesh.cell_volume(c) * g[a].dot(g[b])});
      }
    }
  }
  if (mesh.cell_count() == 0) report.h_min = 0.0;

  const auto S = SparseMatrix::from_triplets(mesh.vertex_count(),
                                             mesh.vertex_count(), triplets);
  report.worst_offdiag = -std::numeric_limits<double>::infinity();
  const auto off = S.offsets();
  const auto cols = S.column_indices();
  const auto vals = S.values();
  for (Index r = 0; r < S.rows(); ++r) {
    for (Index p = off[r]; p < off[r + 1]; ++p) {
      if (cols[p] <= r) continue;
      report.worst_offdiag = std::max(report.worst_offdiag, vals[p]);
      if (vals[p] > tolerance) ++report.offending_pairs;
    }
  }
  if (S.nonzeros() == 0) report.worst_offdiag = 0.0;
  report.angle_condition_holds = report.worst_offdiag <= tolerance;
  return report;
}

}  // namespace tangent_llg
