#include "tangent_llg/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace tangent_llg {

void write_vtk(const Mesh& mesh, const NodalVectorField& m,
               const std::filesystem::path& path) {
  if (m.vertex_count() != mesh.vertex_count()) {
    throw InvalidArgument("write_vtk: field does not match mesh");
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "# vtk DataFile Version 3.0\n"
      << "tangent-llg magnetization\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n";
  out << std::setprecision(17);
  out << "POINTS " << mesh.vertex_count() << " double\n";
  for (const auto& x : mesh.vertices()) {
    out << x[0] << ' ' << x[1] << ' ' << x[2] << '\n';
  }
  out << "CELLS " << mesh.cell_count() << ' ' << 5 * mesh.cell_count() << '\n';
  for (const auto& c : mesh.cells()) {
    out << "4 " << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << '\n';
  }
  out << "CELL_TYPES " << mesh.cell_count() << '\n';
  for (Index c = 0; c < mesh.cell_count(); ++c) out << "10\n";
  out << "POINT_DATA " << mesh.vertex_count() << '\n'
      << "VECTORS m double\n";
  for (Index z = 0; z < m.vertex_count(); ++z) {
    const Vec3 v = m.at(z);
    out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

VtkData read_vtk(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  auto fail = [&](const std::string& what) {
    return LoadError(path.string() + ": " + what);
  };
  std::string line;
  for (int i = 0; i < 4; ++i) {
    if (!std::getline(in, line)) throw fail("truncated header");
  }
  std::string keyword, type;
  Index n = 0;
  if (!(in >> keyword >> n >> type) || keyword != "POINTS") {
    throw fail("expected POINTS");
  }
  std::vector<Vec3> pts(n);
  for (auto& x : pts) {
    if (!(in >> x[0] >> x[1] >> x[2])) throw fail("bad point");
  }
  Index nc = 0, total = 0;
  if (!(in >> keyword >> nc >> total) || keyword != "CELLS") {
    throw fail("expected CELLS");
  }
  std::vector<Cell> cells(nc);
  for (auto& c : cells) {
    Index four = 0;
    if (!(in >> four >> c[0] >> c[1] >> c[2] >> c[3]) || four != 4) {
      throw fail("only tetrahedral cells are supported");
    }
  }
  Index nt = 0;
  if (!(in >> keyword >> nt) || keyword != "CELL_TYPES") {
    throw fail("expected CELL_TYPES");
  }
  for (Index i = 0; i < nt; ++i) {
    int t = 0;
    if (!(in >> t) || t != 10) throw fail("unexpected cell type");
  }
  Index np = 0;
  std::string name;
  if (!(in >> keyword >> np) || keyword != "POINT_DATA" || np != n) {
    throw fail("expected POINT_DATA");
  }
  if (!(in >> keyword >> name >> type) || keyword != "VECTORS") {
    throw fail("expected VECTORS");
  }
  NodalVectorField m(n);
  for (Index z = 0; z < n; ++z) {
    Vec3 v;
    if (!(in >> v[0] >> v[1] >> v[2])) throw fail("bad vector");
    m.set(z, v);
  }
  return {Mesh(std::move(pts), std::move(cells)), std::move(m)};
}

void write_timeseries_csv(const TimeSeries& series,
                          const std::filesystem::path& path) {
  if (series.samples.empty()) {
    throw InvalidArgument("write_timeseries_csv: empty series");
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << kTimeSeriesHeader << '\n' << std::setprecision(17);
  for (const auto& s : series.samples) {
    out << s.t << ',' << s.E_total << ',' << s.E_exchange << ',' << s.E_dmi
        << ',' << s.avg_m[0] << ',' << s.avg_m[1] << ',' << s.avg_m[2] << ','
        << s.v_norm_L2 << ',' << s.constraint_violation_L1 << ','
        << (s.stability_ok ? 1 : 0) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void save_nodal_field(const NodalVectorField& m,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "nodalfield 1\n" << m.vertex_count() << '\n' << std::setprecision(17);
  for (Index z = 0; z < m.vertex_count(); ++z) {
    const Vec3 v = m.at(z);
    out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

NodalVectorField load_nodal_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open field file " + path.string());
  std::string magic;
  int version = 0;
  long long n = -1;
  if (!(in >> magic >> version) || magic != "nodalfield" || version != 1) {
    throw LoadError(path.string() + ":1: expected header 'nodalfield 1'");
  }
  if (!(in >> n) || n < 0) {
    throw LoadError(path.string() + ":2: expected vertex count");
  }
  NodalVectorField m(static_cast<Index>(n));
  for (Index z = 0; z < static_cast<Index>(n); ++z) {
    Vec3 v;
    if (!(in >> v[0] >> v[1] >> v[2])) {
      throw LoadError(path.string() + ":" + std::to_string(z + 3) +
                      ": expected three components");
    }
    m.set(z, v);
  }
  return m;
}

}  // namespace tangent_llg
