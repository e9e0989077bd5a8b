#include "tangent_llg/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace tangent_llg {

namespace {

bool same(const std::optional<Anisotropy>& a,
          const std::optional<Anisotropy>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->q == b->q && a->axis == b->axis);
}

bool same(const std::optional<PulseSchedule>& a,
          const std::optional<PulseSchedule>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->h_max == b->h_max && a->t_start == b->t_start &&
                a->t_ramp_up == b->t_ramp_up && a->t_hold == b->t_hold &&
                a->t_ramp_down == b->t_ramp_down &&
                a->direction == b->direction);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "scheme",          "theta",          "stabilization",
      "k",               "T",              "dt",
      "lex",             "ldm",            "alpha",
      "dmi",             "chirality",      "A",
      "D",               "Ms",             "K",
      "gamma0",          "anisotropy_q",   "anisotropy_axis",
      "pulse_hmax",      "pulse_start",    "pulse_ramp_up",
      "pulse_hold",      "pulse_ramp_down", "pulse_direction",
      "mesh",            "mesh_cells",     "mesh_size",
      "mesh_file",       "initial",        "initial_m",
      "initial_radius",  "initial_centre", "initial_file",
      "output_every",    "solver_tol",     "output_dir",
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class KeyValues {
 public:
  KeyValues(const std::string& text, const std::string& source)
      : source_(source) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError(where(line_no) + "expected 'key = value'");
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (!known_keys().count(key)) {
        throw ConfigError(where(line_no) + "unknown key " + key);
      }
      if (values_.count(key)) {
        throw ConfigError(where(line_no) + "duplicate key " + key);
      }
      if (value.empty()) {
        throw ConfigError(where(line_no) + "empty value for key " + key);
      }
      values_[key] = value;
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const std::string& raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      throw ConfigError(source_ + ": missing key " + key);
    }
    return it->second;
  }

  double number(const std::string& key) const {
    return to_number(key, raw(key));
  }
  double number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  Index count(const std::string& key, Index fallback) const {
    if (!has(key)) return fallback;
    const double v = number(key);
    if (v < 0.0 || v != static_cast<double>(static_cast<long long>(v))) {
      throw ConfigError(source_ + ": key " + key +
                        ": expected a nonnegative integer, got '" + raw(key) +
                        "'");
    }
    return static_cast<Index>(v);
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = raw(key);
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw ConfigError(source_ + ": key " + key +
                      ": expected a boolean, got '" + v + "'");
  }

  std::vector<double> list(const std::string& key, Index expected) const {
    std::vector<double> out;
    std::string item;
    std::istringstream in(raw(key));
    while (std::getline(in, item, ',')) out.push_back(to_number(key, trim(item)));
    if (out.size() != expected) {
      throw ConfigError(source_ + ": key " + key + ": expected " +
                        std::to_string(expected) +
                        " comma-separated numbers, got '" + raw(key) + "'");
    }
    return out;
  }

  Vec3 vec3(const std::string& key) const {
    const auto v = list(key, 3);
    return {v[0], v[1], v[2]};
  }

  const std::string& source() const { return source_; }

 private:
  std::string where(int line) const {
    return source_ + ":" + std::to_string(line) + ": ";
  }

  double to_number(const std::string& key, const std::string& text) const {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
      throw ConfigError(source_ + ": key " + key +
                        ": expected a number, got '" + text + "'");
    }
    return v;
  }

  std::string source_;
  std::map<std::string, std::string> values_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt(const Vec3& v) {
  return fmt(v[0]) + "," + fmt(v[1]) + "," + fmt(v[2]);
}

}  // namespace

bool SimConfig::operator==(const SimConfig& o) const {
  const MaterialParams& a = material;
  const MaterialParams& b = o.material;
  return scheme == o.scheme && k == o.k && T == o.T && a.lex == b.lex &&
         a.ldm == b.ldm && a.alpha == b.alpha && a.dmi_form == b.dmi_form &&
         a.chirality == b.chirality && same(a.anisotropy, b.anisotropy) &&
         same(a.zeeman, b.zeeman) && mesh == o.mesh && initial == o.initial &&
         output_every == o.output_every && solver_tol == o.solver_tol &&
         output_dir == o.output_dir;
}

ParsedConfig parse_config_text(const std::string& text,
                               const std::string& source) {
  const KeyValues kv(text, source);
  ParsedConfig parsed;
  SimConfig& cfg = parsed.config;
  auto& notes = parsed.notes;
  auto wrap = [&](auto&& fn) {
    try {
      fn();
    } catch (const InvalidArgument& e) {
      throw ConfigError(source + ": " + e.what());
    }
  };

  wrap([&] { cfg.scheme.kind = parse_scheme_kind(kv.raw("scheme")); });
  cfg.scheme.theta = kv.number("theta", 1.0);
  cfg.scheme.stabilization_on = kv.boolean("stabilization", true);

  // Physical-unit mode needs Ms for every derived quantity.
  const bool si = kv.has("A") || kv.has("D") || kv.has("K") || kv.has("dt");
  const double Ms = si ? kv.number("Ms") : 0.0;
  const double gamma0 = kv.number("gamma0", kGamma0);
  if (!si && kv.has("Ms")) {
    throw ConfigError(source + ": Ms given without A, D, K or dt");
  }

  if (kv.has("k") && kv.has("dt")) {
    throw ConfigError(source + ": give either k or dt, not both");
  }
  if (kv.has("dt")) {
    const double dt = kv.number("dt");
    wrap([&] {
      if (!(dt > 0.0 && gamma0 > 0.0 && Ms > 0.0)) {
        throw InvalidArgument("dt, gamma0 and Ms must be positive");
      }
    });
    cfg.k = gamma0 * Ms * dt;
    notes.push_back("k = " + fmt(cfg.k) + " (gamma0 * Ms * dt)");
  } else {
    cfg.k = kv.number("k");
  }
  cfg.T = kv.number("T");

  if (kv.has("lex") && kv.has("A")) {
    throw ConfigError(source + ": give either lex or A, not both");
  }
  if (kv.has("A")) {
    wrap([&] { cfg.material.lex = exchange_length(kv.number("A"), Ms) * 1e9; });
    notes.push_back("lex = " + fmt(cfg.material.lex) + " nm (from A, Ms)");
  } else {
    cfg.material.lex = kv.number("lex");
  }
  if (kv.has("ldm") && kv.has("D")) {
    throw ConfigError(source + ": give either ldm or D, not both");
  }
  double D_sign = 1.0;
  if (kv.has("D")) {
    const double D = kv.number("D");
    D_sign = D < 0.0 ? -1.0 : 1.0;
    if (D != 0.0) {
      wrap([&] { cfg.material.ldm = dmi_length(std::abs(D), Ms) * 1e9; });
    }
    notes.push_back("ldm = " + fmt(cfg.material.ldm) + " nm (from D, Ms)");
  } else {
    cfg.material.ldm = kv.number("ldm", 0.0);
  }
  cfg.material.alpha = kv.number("alpha");
  wrap([&] { cfg.material.dmi_form = parse_dmi_form(kv.has("dmi") ? kv.raw("dmi") : "bulk"); });
  cfg.material.chirality = kv.number("chirality", D_sign);
  if (kv.has("D") && kv.has("chirality") && cfg.material.chirality != D_sign) {
    throw ConfigError(source + ": chirality contradicts the sign of D");
  }

  if (kv.has("anisotropy_q") && kv.has("K")) {
    throw ConfigError(source + ": give either anisotropy_q or K, not both");
  }
  if (kv.has("anisotropy_q") || kv.has("K")) {
    Anisotropy ani;
    if (kv.has("K")) {
      wrap([&] { ani.q = anisotropy_strength(kv.number("K"), Ms); });
      notes.push_back("anisotropy_q = " + fmt(ani.q) + " (from K, Ms)");
    } else {
      ani.q = kv.number("anisotropy_q");
    }
    if (kv.has("anisotropy_axis")) ani.axis = kv.vec3("anisotropy_axis");
    cfg.material.anisotropy = ani;
  } else if (kv.has("anisotropy_axis")) {
    throw ConfigError(source + ": anisotropy_axis given without anisotropy_q or K");
  }

  if (kv.has("pulse_hmax")) {
    PulseSchedule p;
    p.h_max = kv.number("pulse_hmax");
    p.t_start = kv.number("pulse_start", 0.0);
    p.t_ramp_up = kv.number("pulse_ramp_up", 0.0);
    p.t_hold = kv.number("pulse_hold", 0.0);
    p.t_ramp_down = kv.number("pulse_ramp_down", 0.0);
    if (kv.has("pulse_direction")) p.direction = kv.vec3("pulse_direction");
    cfg.material.zeeman = p;
  } else {
    for (const char* key : {"pulse_start", "pulse_ramp_up", "pulse_hold",
                            "pulse_ramp_down", "pulse_direction"}) {
      if (kv.has(key)) {
        throw ConfigError(source + ": " + key + " given without pulse_hmax");
      }
    }
  }
  wrap([&] { cfg.material.validate(); });

  const std::string& mesh = kv.raw("mesh");
  if (mesh == "type1" || mesh == "type2") {
    cfg.mesh.kind = mesh == "type1" ? MeshKind::type1 : MeshKind::type2;
    const auto n = kv.list("mesh_cells", 3);
    for (int a = 0; a < 3; ++a) {
      if (n[a] < 1 || n[a] != static_cast<double>(static_cast<int>(n[a]))) {
        throw ConfigError(source + ": mesh_cells must be positive integers");
      }
      cfg.mesh.box.cells[a] = static_cast<int>(n[a]);
    }
    cfg.mesh.box.lengths = kv.vec3("mesh_size");
  } else if (mesh == "file") {
    cfg.mesh.kind = MeshKind::file;
    cfg.mesh.path = kv.raw("mesh_file");
  } else {
    throw ConfigError(source + ": key mesh: expected type1, type2 or file, got '" +
                      mesh + "'");
  }

  const std::string initial = kv.has("initial") ? kv.raw("initial") : "uniform";
  if (initial == "uniform") {
    cfg.initial.kind = InitialKind::uniform;
    if (kv.has("initial_m")) cfg.initial.value = kv.vec3("initial_m");
  } else if (initial == "skyrmion") {
    cfg.initial.kind = InitialKind::skyrmion;
    cfg.initial.radius = kv.number("initial_radius");
    if (kv.has("initial_centre")) cfg.initial.centre = kv.vec3("initial_centre");
  } else if (initial == "file") {
    cfg.initial.kind = InitialKind::file;
    cfg.initial.path = kv.raw("initial_file");
  } else {
    throw ConfigError(source +
                      ": key initial: expected uniform, skyrmion or file, got '" +
                      initial + "'");
  }

  cfg.output_every = kv.count("output_every", 1);
  cfg.solver_tol = kv.number("solver_tol", 1e-10);
  if (kv.has("output_dir")) cfg.output_dir = kv.raw("output_dir");

  if (!(cfg.k > 0.0)) throw ConfigError(source + ": k must be positive");
  if (!(cfg.T >= 0.0)) throw ConfigError(source + ": T must be nonnegative");
  if (cfg.output_every < 1) {
    throw ConfigError(source + ": output_every must be >= 1");
  }
  if (!(cfg.scheme.theta >= 0.0 && cfg.scheme.theta <= 1.0)) {
    throw ConfigError(source + ": theta must lie in [0, 1]");
  }
  if (!(cfg.solver_tol > 0.0)) {
    throw ConfigError(source + ": solver_tol must be positive");
  }
  return parsed;
}

ParsedConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.string());
}

std::string emit_config(const SimConfig& cfg) {
  std::ostringstream os;
  const MaterialParams& p = cfg.material;
  os << "scheme = " << to_string(cfg.scheme.kind) << '\n'
     << "theta = " << fmt(cfg.scheme.theta) << '\n'
     << "stabilization = " << (cfg.scheme.stabilization_on ? "true" : "false")
     << '\n'
     << "k = " << fmt(cfg.k) << '\n'
     << "T = " << fmt(cfg.T) << '\n'
     << "lex = " << fmt(p.lex) << '\n'
     << "ldm = " << fmt(p.ldm) << '\n'
     << "alpha = " << fmt(p.alpha) << '\n'
     << "dmi = " << to_string(p.dmi_form) << '\n'
     << "chirality = " << fmt(p.chirality) << '\n';
  if (p.anisotropy) {
    os << "anisotropy_q = " << fmt(p.anisotropy->q) << '\n'
       << "anisotropy_axis = " << fmt(p.anisotropy->axis) << '\n';
  }
  if (p.zeeman) {
    const PulseSchedule& z = *p.zeeman;
    os << "pulse_hmax = " << fmt(z.h_max) << '\n'
       << "pulse_start = " << fmt(z.t_start) << '\n'
       << "pulse_ramp_up = " << fmt(z.t_ramp_up) << '\n'
       << "pulse_hold = " << fmt(z.t_hold) << '\n'
       << "pulse_ramp_down = " << fmt(z.t_ramp_down) << '\n'
       << "pulse_direction = " << fmt(z.direction) << '\n';
  }
  switch (cfg.mesh.kind) {
    case MeshKind::type1:
    case MeshKind::type2: {
      const auto& n = cfg.mesh.box.cells;
      os << "mesh = " << (cfg.mesh.kind == MeshKind::type1 ? "type1" : "type2")
         << '\n'
         << "mesh_cells = " << n[0] << ',' << n[1] << ',' << n[2] << '\n'
         << "mesh_size = " << fmt(cfg.mesh.box.lengths) << '\n';
      break;
    }
    case MeshKind::file:
      os << "mesh = file\nmesh_file = " << cfg.mesh.path << '\n';
      break;
  }
  switch (cfg.initial.kind) {
    case InitialKind::uniform:
      os << "initial = uniform\ninitial_m = " << fmt(cfg.initial.value) << '\n';
      break;
    case InitialKind::skyrmion:
      os << "initial = skyrmion\ninitial_radius = " << fmt(cfg.initial.radius)
         << '\n';
      if (cfg.initial.centre) {
        os << "initial_centre = " << fmt(*cfg.initial.centre) << '\n';
      }
      break;
    case InitialKind::file:
      os << "initial = file\ninitial_file = " << cfg.initial.path << '\n';
      break;
  }
  os << "output_every = " << cfg.output_every << '\n'
     << "solver_tol = " << fmt(cfg.solver_tol) << '\n'
     << "output_dir = " << cfg.output_dir << '\n';
  return os.str();
}

Mesh make_mesh(const MeshSource& source) {
  switch (source.kind) {
    case MeshKind::type1:
      return generate_type1(source.box);
    case MeshKind::type2:
      return generate_type2(source.box);
    case MeshKind::file:
      break;
  }
  return load_mesh(source.path);
}

}  // namespace tangent_llg
