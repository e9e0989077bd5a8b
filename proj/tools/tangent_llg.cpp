// tangent-llg: command-line driver for the tangent plane integrators.

#include "tangent_llg/config.hpp"
#include "tangent_llg/integrators.hpp"
#include "tangent_llg/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace tangent_llg;

namespace {

enum ExitCode { kOk = 0, kConfig = 1, kRuntime = 2, kIo = 3 };

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') {
      throw ConfigError("expected a comma-separated list of numbers, got '" +
                        text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

std::string snapshot_name(Index step) {
  std::ostringstream os;
  os << "m_" << std::setw(6) << std::setfill('0') << step << ".vtk";
  return os.str();
}

void report_validation(const ValidationReport& v, std::ostream& os) {
  for (const auto& w : v.warnings) os << "warning: " << w << '\n';
  for (const auto& e : v.errors) os << "error: " << e << '\n';
}

int cmd_run(const std::string& config_path, const std::string& out_override) {
  ParsedConfig parsed = parse_config(config_path);
  SimConfig& cfg = parsed.config;
  if (!out_override.empty()) cfg.output_dir = out_override;
  for (const auto& n : parsed.notes) std::cout << "derived: " << n << '\n';

  const Mesh mesh = make_mesh(cfg.mesh);
  const ValidationReport validation = validate_config(cfg, mesh);
  report_validation(validation, std::cerr);
  if (!validation.ok()) return kConfig;

  const fs::path out = cfg.output_dir;
  fs::create_directories(out);
  {
    std::ofstream used(out / "config.used");
    used << emit_config(cfg);
  }
  std::cout << "mesh: " << mesh.vertex_count() << " vertices, "
            << mesh.cell_count() << " cells, h_max "
            << validation.mesh_quality.h_max << "\nsteps: "
            << step_count(cfg.T, cfg.k) << '\n';

  auto observer = [&](const IntegratorState& s) {
    write_vtk(mesh, s.m, out / snapshot_name(s.step));
  };
  try {
    const RunResult result = run(cfg, mesh, observer);
    write_timeseries_csv(result.series, out / "timeseries.csv");
    const auto& last = result.series.samples.back();
    std::cout << std::setprecision(10) << "done: t=" << last.t
              << " E=" << last.E_total << " <m>=(" << last.avg_m[0] << ", "
              << last.avg_m[1] << ", " << last.avg_m[2] << ")\n";
    return kOk;
  } catch (const RunFailure& f) {
    if (!f.partial().samples.empty()) {
      write_timeseries_csv(f.partial(), out / "timeseries.partial.csv");
    }
    std::cerr << "error: " << f.what() << '\n';
    return kRuntime;
  }
}

int cmd_mesh_gen(int type, std::array<int, 3> n, const std::string& size,
                 const std::string& out) {
  if (type != 1 && type != 2) throw ConfigError("--type must be 1 or 2");
  const auto L = parse_list(size);
  if (L.size() != 3) throw ConfigError("--size expects X,Y,Z");
  BoxSpec box{n, Vec3(L[0], L[1], L[2])};
  if (std::any_of(n.begin(), n.end(), [](int v) { return v < 1; }) ||
      !(L[0] > 0 && L[1] > 0 && L[2] > 0)) {
    throw ConfigError("cell counts and box lengths must be positive");
  }
  const Mesh mesh = type == 1 ? generate_type1(box) : generate_type2(box);
  save_mesh(mesh, out);
  std::cout << "wrote " << out << ": " << mesh.vertex_count() << " vertices, "
            << mesh.cell_count() << " cells\n";
  return kOk;
}

int cmd_mesh_check(const std::string& path) {
  const Mesh mesh = load_mesh(path);
  const MeshQualityReport q = analyze_mesh(mesh);
  std::cout << std::setprecision(10) << "vertices: " << mesh.vertex_count()
            << "\ncells: " << mesh.cell_count()
            << "\nvolume: " << mesh.volume() << "\nh_max: " << q.h_max
            << "\nh_min: " << q.h_min << "\nangle_condition: "
            << (q.angle_condition_holds ? "holds" : "fails")
            << "\nworst_offdiag: " << q.worst_offdiag
            << "\noffending_pairs: " << q.offending_pairs << '\n';
  return kOk;
}

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TANGENT_LLG_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

int cmd_sweep(const std::string& config_path, const std::string& vary,
              const std::string& values_text, const std::string& out_override) {
  ParsedConfig parsed = parse_config(config_path);
  SimConfig base = parsed.config;
  if (!out_override.empty()) base.output_dir = out_override;
  if (vary != "k" && vary != "h") throw ConfigError("--vary must be k or h");
  const auto values = parse_list(values_text);
  if (vary == "h" && base.mesh.kind == MeshKind::file) {
    throw ConfigError("--vary h needs a generated mesh (type1 or type2)");
  }

  // Runs are independent; the mesh is shared when only k varies.
  std::optional<Mesh> shared;
  if (vary == "k") shared = make_mesh(base.mesh);

  std::vector<SimConfig> configs;
  for (double v : values) {
    if (!(v > 0.0)) throw ConfigError("sweep values must be positive");
    SimConfig cfg = base;
    if (vary == "k") {
      cfg.k = v;
    } else {
      for (int a = 0; a < 3; ++a) {
        cfg.mesh.box.cells[a] = std::max(
            1, static_cast<int>(std::ceil(cfg.mesh.box.lengths[a] / v - 1e-9)));
      }
    }
    configs.push_back(cfg);
  }

  const fs::path out = base.output_dir;
  fs::create_directories(out);
  std::vector<int> codes(configs.size(), kOk);
  std::atomic<std::size_t> next{0};
  std::mutex log;
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      const SimConfig& cfg = configs[i];
      std::ostringstream name;
      name << "sweep_" << vary << '_' << std::setprecision(10) << values[i]
           << ".csv";
      std::string message;
      try {
        const Mesh local = shared ? Mesh() : make_mesh(cfg.mesh);
        const Mesh& mesh = shared ? *shared : local;
        const ValidationReport validation = validate_config(cfg, mesh);
        if (!validation.ok()) {
          codes[i] = kConfig;
          message = validation.errors.front();
        } else {
          const RunResult result = run(cfg, mesh);
          write_timeseries_csv(result.series, out / name.str());
          message = "wrote " + (out / name.str()).string();
        }
      } catch (const RunFailure& f) {
        codes[i] = kRuntime;
        message = f.what();
      } catch (const IoError& e) {
        codes[i] = kIo;
        message = e.what();
      } catch (const ConfigError& e) {
        codes[i] = kConfig;
        message = e.what();
      } catch (const std::exception& e) {
        codes[i] = kRuntime;
        message = e.what();
      }
      const std::lock_guard<std::mutex> lock(log);
      (codes[i] == kOk ? std::cout : std::cerr)
          << vary << '=' << values[i] << ": " << message << '\n';
    }
  };
  const unsigned n = worker_count(configs.size());
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < n; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return *std::max_element(codes.begin(), codes.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tangent plane integrators for LLG with DMI"};
  app.require_subcommand(1);

  std::string config, out, vary, values, mesh_out, size, check_path;
  int type = 1;
  std::array<int, 3> n{1, 1, 1};

  auto* run_cmd = app.add_subcommand("run", "Run one simulation");
  run_cmd->add_option("--config", config, "Config file")->required();
  run_cmd->add_option("--out", out, "Output directory (overrides output_dir)");

  auto* mesh_cmd = app.add_subcommand("mesh", "Mesh utilities");
  mesh_cmd->require_subcommand(1);
  auto* gen = mesh_cmd->add_subcommand("gen", "Generate a box mesh");
  gen->add_option("--type", type, "1 or 2")->required();
  gen->add_option("--nx", n[0])->required();
  gen->add_option("--ny", n[1])->required();
  gen->add_option("--nz", n[2])->required();
  gen->add_option("--size", size, "X,Y,Z box lengths in nm")->required();
  gen->add_option("--out", mesh_out, "Output mesh file")->required();
  auto* check = mesh_cmd->add_subcommand("check", "Report mesh quality");
  check->add_option("file", check_path)->required();

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("--config", config)->required();
  sweep->add_option("--vary", vary, "k or h")->required();
  sweep->add_option("--values", values, "Comma-separated list")->required();
  sweep->add_option("--out", out, "Output directory (overrides output_dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run_cmd) return cmd_run(config, out);
    if (*gen) return cmd_mesh_gen(type, n, size, mesh_out);
    if (*check) return cmd_mesh_check(check_path);
    if (*sweep) return cmd_sweep(config, vary, values, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const LoadError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}
