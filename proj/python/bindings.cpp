// Python bindings: meshes, configs, runs and energies.

#include "tangent_llg/config.hpp"
#include "tangent_llg/integrators.hpp"
#include "tangent_llg/io.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace tangent_llg;

namespace {

using RowsX3 = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;
using RowsX4i = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 4, Eigen::RowMajor>;

RowsX3 vertices_array(const Mesh& mesh) {
  RowsX3 out(mesh.vertex_count(), 3);
  for (Index z = 0; z < mesh.vertex_count(); ++z) out.row(z) = mesh.vertex(z).transpose();
  return out;
}

RowsX4i cells_array(const Mesh& mesh) {
  RowsX4i out(mesh.cell_count(), 4);
  for (Index c = 0; c < mesh.cell_count(); ++c) {
    for (int a = 0; a < 4; ++a) out(c, a) = static_cast<std::int64_t>(mesh.cell(c)[a]);
  }
  return out;
}

Mesh mesh_from_arrays(const RowsX3& v, const RowsX4i& c) {
  std::vector<Vec3> vertices(v.rows());
  for (Eigen::Index i = 0; i < v.rows(); ++i) vertices[i] = v.row(i).transpose();
  std::vector<Cell> cells(c.rows());
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (int a = 0; a < 4; ++a) {
      if (c(i, a) < 0) throw InvalidArgument("negative vertex index");
      cells[i][a] = static_cast<Index>(c(i, a));
    }
  }
  return Mesh(std::move(vertices), std::move(cells));
}

NodalVectorField field_from_rows(const RowsX3& m) {
  NodalVectorField f(static_cast<Index>(m.rows()));
  for (Eigen::Index z = 0; z < m.rows(); ++z) f.set(z, m.row(z).transpose());
  return f;
}

RowsX3 rows_from_field(const NodalVectorField& f) {
  RowsX3 out(f.vertex_count(), 3);
  for (Index z = 0; z < f.vertex_count(); ++z) out.row(z) = f.at(z).transpose();
  return out;
}

BoxSpec box_spec(std::array<int, 3> cells, std::array<double, 3> size) {
  return BoxSpec{cells, Vec3(size[0], size[1], size[2])};
}

py::dict series_dict(const TimeSeries& s) {
  const auto n = static_cast<Eigen::Index>(s.samples.size());
  Eigen::VectorXd t(n), E(n), Ex(n), Ed(n), El(n), v(n), viol(n);
  RowsX3 avg(n, 3);
  std::vector<bool> stable(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Sample& x = s.samples[i];
    t[i] = x.t;
    E[i] = x.E_total;
    Ex[i] = x.E_exchange;
    Ed[i] = x.E_dmi;
    El[i] = x.E_lower;
    v[i] = x.v_norm_L2;
    viol[i] = x.constraint_violation_L1;
    avg.row(i) = x.avg_m.transpose();
    stable[i] = x.stability_ok;
  }
  py::dict d;
  d["t"] = t;
  d["E_total"] = E;
  d["E_exchange"] = Ex;
  d["E_dmi"] = Ed;
  d["E_lower"] = El;
  d["avg_m"] = avg;
  d["v_l2"] = v;
  d["constraint_l1"] = viol;
  d["stability_ok"] = stable;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Tangent plane finite element integrators for LLG with DMI";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(mod, "InvalidArgument", PyExc_ValueError);
  py::register_exception<IoError>(mod, "IoError", PyExc_OSError);
  py::register_exception<LoadError>(mod, "LoadError", PyExc_OSError);

  py::class_<Mesh>(mod, "Mesh")
      .def(py::init(&mesh_from_arrays), py::arg("vertices"), py::arg("cells"))
      .def_property_readonly("vertices", &vertices_array)
      .def_property_readonly("cells", &cells_array)
      .def_property_readonly("vertex_count", &Mesh::vertex_count)
      .def_property_readonly("cell_count", &Mesh::cell_count)
      .def("volume", &Mesh::volume)
      .def("__repr__", [](const Mesh& m) {
        return "<Mesh " + std::to_string(m.vertex_count()) + " vertices, " +
               std::to_string(m.cell_count()) + " cells>";
      });

  mod.def("generate_type1",
          [](std::array<int, 3> cells, std::array<double, 3> size) {
            return generate_type1(box_spec(cells, size));
          },
          py::arg("cells"), py::arg("size"));
  mod.def("generate_type2",
          [](std::array<int, 3> cells, std::array<double, 3> size) {
            return generate_type2(box_spec(cells, size));
          },
          py::arg("cells"), py::arg("size"));
  mod.def("load_mesh", &load_mesh, py::arg("path"));
  mod.def("save_mesh", &save_mesh, py::arg("mesh"), py::arg("path"));

  mod.def("analyze_mesh", [](const Mesh& mesh) {
    const MeshQualityReport q = analyze_mesh(mesh);
    py::dict d;
    d["h_max"] = q.h_max;
    d["h_min"] = q.h_min;
    d["angle_condition_holds"] = q.angle_condition_holds;
    d["worst_offdiag"] = q.worst_offdiag;
    d["offending_pairs"] = q.offending_pairs;
    return d;
  }, py::arg("mesh"));

  py::class_<SimConfig>(mod, "SimConfig")
      .def_readwrite("k", &SimConfig::k)
      .def_readwrite("T", &SimConfig::T)
      .def_readwrite("output_every", &SimConfig::output_every)
      .def_readwrite("solver_tol", &SimConfig::solver_tol)
      .def_readwrite("output_dir", &SimConfig::output_dir)
      .def_property("scheme",
                    [](const SimConfig& c) { return std::string(to_string(c.scheme.kind)); },
                    [](SimConfig& c, const std::string& s) { c.scheme.kind = parse_scheme_kind(s); })
      .def_property("lex", [](const SimConfig& c) { return c.material.lex; },
                    [](SimConfig& c, double v) { c.material.lex = v; })
      .def_property("ldm", [](const SimConfig& c) { return c.material.ldm; },
                    [](SimConfig& c, double v) { c.material.ldm = v; })
      .def_property("alpha", [](const SimConfig& c) { return c.material.alpha; },
                    [](SimConfig& c, double v) { c.material.alpha = v; })
      .def("__eq__", [](const SimConfig& a, const SimConfig& b) { return a == b; })
      .def("__str__", &emit_config);

  mod.def("parse_config_text",
          [](const std::string& text) { return parse_config_text(text).config; },
          py::arg("text"));
  mod.def("parse_config",
          [](const std::filesystem::path& p) { return parse_config(p).config; },
          py::arg("path"));
  mod.def("emit_config", &emit_config, py::arg("config"));
  mod.def("make_mesh", [](const SimConfig& c) { return make_mesh(c.mesh); },
          py::arg("config"));

  mod.def("initial_magnetization",
          [](const SimConfig& c, const Mesh& mesh) {
            return rows_from_field(initial_magnetization(c, mesh));
          },
          py::arg("config"), py::arg("mesh"));

  mod.def("energy",
          [](const SimConfig& c, const Mesh& mesh, const RowsX3& m) {
            if (static_cast<Index>(m.rows()) != mesh.vertex_count()) {
              throw InvalidArgument("m must have one row per vertex");
            }
            const FormSet forms =
                assemble_static(mesh, c.material.dmi_form, c.material.chirality);
            const EnergyParts e = energy(field_from_rows(m), forms, c.material);
            py::dict d;
            d["exchange"] = e.exchange;
            d["dmi"] = e.dmi;
            d["anisotropy"] = e.anisotropy;
            d["zeeman"] = e.zeeman;
            d["total"] = e.total();
            return d;
          },
          py::arg("config"), py::arg("mesh"), py::arg("m"));

  // Returns (series dict, final m as an (N, 3) array).
  mod.def("run",
          [](const SimConfig& c, const Mesh& mesh, std::optional<RowsX3> m0) {
            RunResult r = [&] {
              py::gil_scoped_release release;
              return m0 ? run(c, mesh, field_from_rows(*m0)) : run(c, mesh);
            }();
            return py::make_tuple(series_dict(r.series),
                                  rows_from_field(r.final_state.m));
          },
          py::arg("config"), py::arg("mesh"), py::arg("m0") = py::none());
}
