#include "tangent_llg/config.hpp"
#include "tangent_llg/integrators.hpp"
#include "tangent_llg/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tangent_llg;
namespace fs = std::filesystem;

namespace {

const char* kPreset = R"(# relaxation preset
scheme = tps1
theta = 1
k = 0.0221
T = 200
lex = 10
ldm = 20
alpha = 0.08
mesh = type1
mesh_cells = 16,16,2
mesh_size = 80,80,10
initial = uniform
initial_m = 0.01,-0.01,0.99989999499987499
)";

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("tangent_llg_io_" + name);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string config_error(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("preset config") {
  const SimConfig cfg = parse_config_text(kPreset).config;
  CHECK(cfg.scheme.kind == SchemeKind::tps1);
  CHECK(cfg.scheme.theta == 1.0);
  CHECK(cfg.material.lex == 10.0);
  CHECK(cfg.material.ldm == 20.0);
  CHECK(cfg.material.alpha == 0.08);
  CHECK(cfg.T == 200.0);
  CHECK(cfg.k == 0.0221);
  CHECK(cfg.material.dmi_form == DmiForm::bulk);
  CHECK(cfg.mesh.box.cells == std::array<int, 3>{16, 16, 2});
  CHECK(cfg.output_every == 1);
}

TEST_CASE("shipped preset parses") {
  const fs::path preset = fs::path(TANGENT_LLG_SOURCE_DIR) / "configs" / "cuboid_tps1.cfg";
  const SimConfig cfg = parse_config(preset).config;
  CHECK(cfg.k == 0.0221);
  CHECK(cfg.material.ldm == 20.0);
}

TEST_CASE("config errors") {
  const std::string base = kPreset;
  CHECK(config_error(base + "thetta = 1\n").find("unknown key thetta") != std::string::npos);
  std::string no_k = base;
  no_k.erase(no_k.find("k = 0.0221\n"), 11);
  CHECK(config_error(no_k).find("missing key k") != std::string::npos);
  std::string bad_k = base;
  bad_k.replace(bad_k.find("k = 0.0221"), 10, "k = fast");
  CHECK(config_error(bad_k).find("expected a number") != std::string::npos);
  CHECK(config_error(base + "alpha = 0.1\n").find("duplicate key alpha") != std::string::npos);
  CHECK(config_error(base + "just words\n").find(":14:") != std::string::npos);
  std::string neg_k = base;
  neg_k.replace(neg_k.find("k = 0.0221"), 10, "k = -1");
  CHECK_FALSE(config_error(neg_k).empty());
  CHECK_FALSE(config_error(base + "output_every = 0\n").empty());
  CHECK_FALSE(config_error(base + "pulse_hold = 3\n").empty());
  CHECK_THROWS_AS(parse_config(temp_path("missing.cfg")), IoError);
}

TEST_CASE("physical units are converted to nanometres") {
  const std::string text = R"(scheme = tps2
A = 8.78e-12
D = 1.58e-3
Ms = 3.84e5
dt = 1e-13
T = 1
alpha = 0.28
mesh = type1
mesh_cells = 1,1,1
mesh_size = 10,10,10
)";
  const ParsedConfig p = parse_config_text(text);
  CHECK(p.config.material.lex == doctest::Approx(9.74).epsilon(5e-4));
  CHECK(p.config.material.ldm == doctest::Approx(17.06).epsilon(5e-4));
  CHECK(p.config.k == doctest::Approx(kGamma0 * 3.84e5 * 1e-13));
  CHECK(p.notes.size() == 3);
  CHECK(config_error(text + "lex = 3\n").find("either lex or A") != std::string::npos);
}

TEST_CASE("emit and parse round trip") {
  SimConfig cfg = parse_config_text(kPreset).config;
  CHECK(parse_config_text(emit_config(cfg)).config == cfg);

  cfg.scheme = {SchemeKind::tps2, 1.0, false};
  cfg.material.dmi_form = DmiForm::interfacial;
  cfg.material.chirality = -1.0;
  cfg.material.anisotropy = Anisotropy{0.1 / 3.0, Vec3(0, 0, 1)};
  cfg.material.zeeman = PulseSchedule{0.2, 1.0, 40.0, 70.0, 40.0, Vec3(0, 1, 0)};
  cfg.mesh.kind = MeshKind::type2;
  cfg.initial.kind = InitialKind::skyrmion;
  cfg.initial.radius = 15.0;
  cfg.initial.centre = Vec3(40.0, 40.0, 0.0);
  cfg.output_every = 7;
  cfg.solver_tol = 1e-11;
  cfg.output_dir = "runs/a";
  const SimConfig back = parse_config_text(emit_config(cfg)).config;
  CHECK(back == cfg);

  cfg.mesh.kind = MeshKind::file;
  cfg.mesh.path = "box.mesh";
  cfg.initial.kind = InitialKind::file;
  cfg.initial.path = "m0.field";
  CHECK(parse_config_text(emit_config(cfg)).config == cfg);
}

TEST_CASE("vtk output") {
  const Mesh tet({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 2, 3}});
  const auto path = temp_path("tet.vtk");
  write_vtk(tet, NodalVectorField::uniform(4, {0, 0, 1}), path);
  const std::string text = slurp(path);
  CHECK(text.find("POINTS 4 double") != std::string::npos);
  CHECK(text.find("CELLS 1 5") != std::string::npos);
  CHECK(text.find("CELL_TYPES 1\n10\n") != std::string::npos);
  CHECK(text.find("VECTORS m double") != std::string::npos);

  const Mesh mesh = generate_type1({{2, 2, 1}, {1.0, 1.0, 0.5}});
  NodalVectorField m(mesh.vertex_count());
  for (Index z = 0; z < mesh.vertex_count(); ++z) {
    m.set(z, Vec3(std::sin(z + 0.1), std::cos(3.0 * z), 1.0 / (z + 3.0)));
  }
  write_vtk(mesh, m, path);
  CHECK(slurp(path).find("CELLS 24 120") != std::string::npos);
  const VtkData back = read_vtk(path);
  CHECK(back.mesh == mesh);
  CHECK((back.m.values() - m.values()).cwiseAbs().maxCoeff() <= 1e-15);
  fs::remove(path);
  CHECK_THROWS_AS(write_vtk(mesh, NodalVectorField(3), path), InvalidArgument);
}

TEST_CASE("time series csv") {
  const auto path = temp_path("series.csv");
  TimeSeries empty;
  CHECK_THROWS_AS(write_timeseries_csv(empty, path), InvalidArgument);

  SimConfig cfg = parse_config_text(kPreset).config;
  cfg.mesh.box.cells = {4, 4, 1};
  cfg.T = 0.0;
  const Mesh mesh = generate_type1(cfg.mesh.box);
  RunResult r = run(cfg, mesh);
  write_timeseries_csv(r.series, path);
  std::string text = slurp(path);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.rfind(std::string(kTimeSeriesHeader) + "\n", 0) == 0);
  std::istringstream rows(text);
  std::string header, row, cell;
  std::getline(rows, header);
  std::getline(rows, row);
  std::vector<std::string> cells;
  std::istringstream fields(row);
  while (std::getline(fields, cell, ',')) cells.push_back(cell);
  REQUIRE(cells.size() == 10);
  CHECK(std::stod(cells[6]) == doctest::Approx(0.99990).epsilon(1e-5));
  CHECK(std::stod(cells[6]) == doctest::Approx(std::sqrt(0.9998)).epsilon(1e-14));

  cfg.T = 0.1;
  const auto again = temp_path("series2.csv");
  write_timeseries_csv(run(cfg, mesh).series, path);
  write_timeseries_csv(run(cfg, mesh).series, again);
  CHECK(slurp(path) == slurp(again));
  fs::remove(path);
  fs::remove(again);
}

TEST_CASE("nodal field files") {
  const auto path = temp_path("m.field");
  NodalVectorField m(3);
  m.set(0, {1.0 / 3.0, 0, 0});
  m.set(2, {0, -2.0 / 7.0, 1});
  save_nodal_field(m, path);
  CHECK(load_nodal_field(path).values() == m.values());
  {
    std::ofstream out(path);
    out << "nodalfield 1\n2\n1 0 0\n1 0\n";
  }
  try {
    load_nodal_field(path);
    FAIL("expected LoadError");
  } catch (const LoadError& e) {
    CHECK(std::string(e.what()).find(":4:") != std::string::npos);
  }
  fs::remove(path);
}
