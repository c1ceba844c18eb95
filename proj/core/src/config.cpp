#include "qcp/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "qcp/error.hpp"
#include "qcp/format.hpp"
#include "qcp/model.hpp"
#include "qcp/state.hpp"

namespace qcp {
namespace pt = boost::property_tree;

const char* to_string(ModelKind k) noexcept {
  switch (k) {
    case ModelKind::qxp: return "qxp";
    case ModelKind::rydberg: return "rydberg";
    case ModelKind::domain: return "domain";
    case ModelKind::classical: return "classical";
  }
  return "?";
}

const char* to_string(CouplingKind k) noexcept {
  switch (k) {
    case CouplingKind::uniform: return "uniform";
    case CouplingKind::ssh: return "ssh";
    case CouplingKind::aah: return "aah";
  }
  return "?";
}

const char* to_string(InitialKind k) noexcept {
  switch (k) {
    case InitialKind::seed: return "seed";
    case InitialKind::fock: return "fock";
    case InitialKind::custom: return "custom";
  }
  return "?";
}

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"experiment",
       {"name", "model", "n_sites", "t_max", "n_samples", "tol", "verify_step_halving", "max_dim", "outputs"}},
      {"couplings", {"kind", "lambda", "lambda_v", "lambda_w"}},
      {"pump", {"lambda0", "eta0", "phase0", "segments", "min_hold"}},
      {"detuning", {"delta_offset", "v_nn", "facilitation", "delta"}},
      {"initial", {"kind", "m", "amplitudes"}},
      {"classical", {"gamma_f0", "gamma"}},
      {"sweep", {"parameter", "values"}},
  };
  return s;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (out.size() == 1 && out.front().empty()) out.clear();
  return out;
}

double to_double(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (t.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    throw ConfigError(field, "expected a finite number, got '" + t + "'");
  }
  return v;
}

long to_integer(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  long v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ConfigError(field, "expected an integer, got '" + t + "'");
  }
  return v;
}

bool to_bool(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  throw ConfigError(field, "expected true or false, got '" + t + "'");
}

std::vector<double> to_doubles(const std::string& text, const std::string& field) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(to_double(item, field));
  return out;
}

// "re" or "re:im"
Complex to_complex(const std::string& text, const std::string& field) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {to_double(parts[0], field), 0.0};
  if (parts.size() == 2) return {to_double(parts[0], field), to_double(parts[1], field)};
  throw ConfigError(field, "expected re or re:im, got '" + text + "'");
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> raw(const std::string& path) const {
    if (auto v = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return trim(*v);
    return std::nullopt;
  }
  bool has_section(const std::string& s) const { return tree_.find(s) != tree_.not_found(); }

  double number(const std::string& path, double fallback) const {
    auto r = raw(path);
    return r ? to_double(*r, path) : fallback;
  }
  std::optional<double> optional_number(const std::string& path) const {
    auto r = raw(path);
    if (!r) return std::nullopt;
    return to_double(*r, path);
  }
  long integer(const std::string& path, long fallback) const {
    auto r = raw(path);
    return r ? to_integer(*r, path) : fallback;
  }
  bool boolean(const std::string& path, bool fallback) const {
    auto r = raw(path);
    return r ? to_bool(*r, path) : fallback;
  }
  std::string text(const std::string& path, const std::string& fallback) const { return raw(path).value_or(fallback); }

 private:
  const pt::ptree& tree_;
};

template <typename Enum, std::size_t N>
Enum to_enum(const std::string& text, const std::string& field, const Enum (&options)[N]) {
  for (Enum e : options) {
    if (text == to_string(e)) return e;
  }
  std::string allowed;
  for (Enum e : options) allowed += std::string(allowed.empty() ? "" : ", ") + to_string(e);
  throw ConfigError(field, "unknown value '" + text + "' (expected one of " + allowed + ")");
}

void check_schema(const pt::ptree& tree) {
  const auto& s = schema();
  for (const auto& [section, body] : tree) {
    const auto it = s.find(section);
    if (it == s.end()) {
      if (body.empty()) throw ConfigError(section, "keys must belong to a section");
      throw ConfigError(section, "unknown section");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw ConfigError(section + "." + key, "unknown key");
    }
  }
}

PumpProgram parse_segments(const std::string& text, double phase0) {
  PumpProgram p;
  p.phase0 = phase0;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw ConfigError("pump.segments", "expected duration:omega pairs, got '" + item + "'");
    p.segments.push_back({to_double(parts[0], "pump.segments"), to_double(parts[1], "pump.segments")});
  }
  if (p.segments.empty()) throw ConfigError("pump.segments", "at least one segment is required");
  for (const auto& s : p.segments) {
    if (!(s.duration > 0.0)) throw ConfigError("pump.segments", "segment durations must be positive");
  }
  return p;
}

ExperimentConfig from_tree(const pt::ptree& tree) {
  check_schema(tree);
  const Reader r(tree);
  ExperimentConfig c;
  c.name = r.text("experiment.name", c.name);
  constexpr ModelKind models[] = {ModelKind::qxp, ModelKind::rydberg, ModelKind::domain, ModelKind::classical};
  c.model = to_enum(r.text("experiment.model", "domain"), "experiment.model", models);
  if (!r.raw("experiment.n_sites")) throw ConfigError("experiment.n_sites", "required");
  c.n_sites = static_cast<int>(r.integer("experiment.n_sites", 0));
  if (!r.raw("experiment.t_max")) throw ConfigError("experiment.t_max", "required");
  c.t_max = r.number("experiment.t_max", 0.0);
  c.n_samples = static_cast<int>(r.integer("experiment.n_samples", c.n_samples));
  c.tol = r.number("experiment.tol", c.tol);
  c.verify_step_halving = r.boolean("experiment.verify_step_halving", c.verify_step_halving);
  const long max_dim = r.integer("experiment.max_dim", static_cast<long>(c.max_dim));
  if (max_dim < 1) throw ConfigError("experiment.max_dim", "must be positive");
  c.max_dim = static_cast<std::size_t>(max_dim);
  if (auto o = r.raw("experiment.outputs")) c.outputs = split(*o, ',');

  constexpr CouplingKind couplings[] = {CouplingKind::uniform, CouplingKind::ssh, CouplingKind::aah};
  c.couplings.kind = to_enum(r.text("couplings.kind", "uniform"), "couplings.kind", couplings);
  c.couplings.lambda = r.number("couplings.lambda", c.couplings.lambda);
  c.couplings.lambda_v = r.number("couplings.lambda_v", c.couplings.lambda_v);
  c.couplings.lambda_w = r.number("couplings.lambda_w", c.couplings.lambda_w);

  if (r.has_section("pump")) {
    PumpSpec p;
    p.lambda0 = r.number("pump.lambda0", p.lambda0);
    p.eta0 = r.number("pump.eta0", p.eta0);
    p.min_hold = r.number("pump.min_hold", p.min_hold);
    auto seg = r.raw("pump.segments");
    if (!seg) throw ConfigError("pump.segments", "required");
    p.program = parse_segments(*seg, r.number("pump.phase0", 0.0));
    c.pump = std::move(p);
  }

  c.detuning.delta_offset = r.optional_number("detuning.delta_offset");
  c.detuning.v_nn = r.optional_number("detuning.v_nn");
  c.detuning.facilitation = r.boolean("detuning.facilitation", true);
  if (auto d = r.raw("detuning.delta")) c.detuning.delta = to_doubles(*d, "detuning.delta");

  constexpr InitialKind initials[] = {InitialKind::seed, InitialKind::fock, InitialKind::custom};
  c.initial.kind = to_enum(r.text("initial.kind", "seed"), "initial.kind", initials);
  c.initial.m = static_cast<int>(r.integer("initial.m", 1));
  if (auto a = r.raw("initial.amplitudes")) {
    for (const auto& item : split(*a, ',')) c.initial.amplitudes.push_back(to_complex(item, "initial.amplitudes"));
  }

  c.classical.gamma_f0 = r.number("classical.gamma_f0", c.classical.gamma_f0);
  c.classical.gamma = r.number("classical.gamma", c.classical.gamma);

  if (r.has_section("sweep")) {
    SweepSpec s;
    s.parameter = r.text("sweep.parameter", "");
    auto v = r.raw("sweep.values");
    if (!v) throw ConfigError("sweep.values", "required");
    s.values = to_doubles(*v, "sweep.values");
    c.sweep = std::move(s);
  }
  c.validate();
  return c;
}

pt::ptree parse_tree(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    std::ostringstream os;
    os << "line " << e.line() << ": " << e.message();
    throw ConfigError("", os.str());
  }
  return tree;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (name.empty() || name.find_first_of("/\\") != std::string::npos) {
    throw ConfigError("experiment.name", "must be non-empty and contain no path separators");
  }
  if (n_sites < 1 || n_sites > kMaxSites) {
    throw ConfigError("experiment.n_sites", "must lie in [1, " + std::to_string(kMaxSites) + "]");
  }
  if (!(t_max > 0.0)) throw ConfigError("experiment.t_max", "must be positive");
  if (n_samples < 2) throw ConfigError("experiment.n_samples", "must be at least 2");
  if (!(tol >= 1e-12 && tol <= 1e-6)) throw ConfigError("experiment.tol", "must lie in [1e-12, 1e-6]");
  for (const auto& o : outputs) {
    if (std::find(std::begin(kObservables), std::end(kObservables), o) == std::end(kObservables)) {
      throw ConfigError("experiment.outputs", "unknown observable '" + o + "'");
    }
  }

  const bool is_aah = couplings.kind == CouplingKind::aah;
  if (is_aah && !pump) throw ConfigError("pump", "aah couplings need a [pump] section");
  if (!is_aah && pump) throw ConfigError("couplings.kind", "a [pump] section requires kind = aah");
  if (is_aah && model != ModelKind::domain && model != ModelKind::rydberg) {
    throw ConfigError("couplings.kind", "aah schedules run on the domain or rydberg model");
  }
  if (pump) {
    if (!(pump->min_hold >= 0.0)) throw ConfigError("pump.min_hold", "must be non-negative");
    try {
      pump->program.validate();
    } catch (const ParameterError& e) {
      throw ConfigError("pump.segments", e.what());
    }
  }

  if (model == ModelKind::rydberg) {
    if (!detuning.delta_offset) throw ConfigError("detuning.delta_offset", "rydberg model requires Delta_0");
    if (detuning.facilitation && detuning.v_nn &&
        std::abs(*detuning.v_nn + *detuning.delta_offset) > 1e-12 * (1.0 + std::abs(*detuning.delta_offset))) {
      throw ConfigError("detuning.v_nn", "facilitation requires v_nn = -delta_offset");
    }
    if (!detuning.facilitation && !detuning.v_nn) {
      throw ConfigError("detuning.v_nn", "required when facilitation is off");
    }
  } else if (detuning.delta_offset || detuning.v_nn) {
    throw ConfigError("detuning.delta_offset", "only the rydberg model takes an offset or interaction");
  }
  if (!detuning.delta.empty()) {
    if (detuning.delta.size() != static_cast<std::size_t>(n_sites)) {
      throw ConfigError("detuning.delta", "needs one value per site");
    }
    if (detuning.delta.front() != 0.0) throw ConfigError("detuning.delta", "the seed site must stay undriven (delta_1 = 0)");
    if (is_aah) throw ConfigError("detuning.delta", "aah schedules derive the detunings");
  }

  switch (initial.kind) {
    case InitialKind::seed: break;
    case InitialKind::fock:
      if (initial.m < 1 || initial.m > n_sites) throw ConfigError("initial.m", "must lie in [1, n_sites]");
      break;
    case InitialKind::custom: {
      if (model == ModelKind::classical) throw ConfigError("initial.kind", "classical runs take seed or fock");
      const auto basis = model == ModelKind::domain ? BasisKind::domain : BasisKind::spin;
      if (basis == BasisKind::spin && n_sites > kMaxBuildSites) break;  // capacity is reported at run time
      if (initial.amplitudes.size() != basis_dimension(basis, n_sites)) {
        throw ConfigError("initial.amplitudes", "length must equal the basis dimension");
      }
      double norm = 0.0;
      for (const auto& a : initial.amplitudes) norm += std::norm(a);
      if (std::abs(std::sqrt(norm) - 1.0) > kNormTolerance) throw ConfigError("initial.amplitudes", "must be normalized");
      break;
    }
  }

  if (model == ModelKind::classical) {
    if (!(classical.gamma_f0 >= 0.0)) throw ConfigError("classical.gamma_f0", "must be non-negative");
    if (!(classical.gamma >= 0.0)) throw ConfigError("classical.gamma", "must be non-negative");
  }

  if (sweep) {
    const auto dot = sweep->parameter.find('.');
    const auto& s = schema();
    const auto it = dot == std::string::npos ? s.end() : s.find(sweep->parameter.substr(0, dot));
    if (it == s.end() || !it->second.count(sweep->parameter.substr(dot + 1)) || it->first == "sweep") {
      throw ConfigError("sweep.parameter", "unknown key '" + sweep->parameter + "'");
    }
    if (sweep->values.empty()) throw ConfigError("sweep.values", "at least one value is required");
  }
}

AahSchedule ExperimentConfig::schedule() const {
  if (!pump) throw ConfigError("pump", "configuration has no pump schedule");
  return aah_schedule(pump->lambda0, pump->eta0, pump->program);
}

ExperimentConfig parse_config(std::string_view text) { return from_tree(parse_tree(text)); }

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_config_text(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[experiment]\n"
     << "name = " << c.name << "\n"
     << "model = " << to_string(c.model) << "\n"
     << "n_sites = " << c.n_sites << "\n"
     << "t_max = " << format_double(c.t_max) << "\n"
     << "n_samples = " << c.n_samples << "\n"
     << "tol = " << format_double(c.tol) << "\n"
     << "verify_step_halving = " << (c.verify_step_halving ? "true" : "false") << "\n"
     << "max_dim = " << c.max_dim << "\n";
  if (!c.outputs.empty()) {
    os << "outputs = ";
    for (std::size_t i = 0; i < c.outputs.size(); ++i) os << (i ? ", " : "") << c.outputs[i];
    os << "\n";
  }
  os << "\n[couplings]\nkind = " << to_string(c.couplings.kind) << "\n";
  if (c.couplings.kind == CouplingKind::uniform) os << "lambda = " << format_double(c.couplings.lambda) << "\n";
  if (c.couplings.kind == CouplingKind::ssh) {
    os << "lambda_v = " << format_double(c.couplings.lambda_v) << "\n"
       << "lambda_w = " << format_double(c.couplings.lambda_w) << "\n";
  }
  if (c.pump) {
    os << "\n[pump]\n"
       << "lambda0 = " << format_double(c.pump->lambda0) << "\n"
       << "eta0 = " << format_double(c.pump->eta0) << "\n"
       << "phase0 = " << format_double(c.pump->program.phase0) << "\n"
       << "min_hold = " << format_double(c.pump->min_hold) << "\n"
       << "segments = ";
    const auto& segs = c.pump->program.segments;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      os << (i ? ", " : "") << format_double(segs[i].duration) << ":" << format_double(segs[i].omega);
    }
    os << "\n";
  }
  if (c.detuning.delta_offset || c.detuning.v_nn || !c.detuning.delta.empty() || !c.detuning.facilitation) {
    os << "\n[detuning]\n";
    if (c.detuning.delta_offset) os << "delta_offset = " << format_double(*c.detuning.delta_offset) << "\n";
    if (c.detuning.v_nn) os << "v_nn = " << format_double(*c.detuning.v_nn) << "\n";
    os << "facilitation = " << (c.detuning.facilitation ? "true" : "false") << "\n";
    if (!c.detuning.delta.empty()) os << "delta = " << join(c.detuning.delta) << "\n";
  }
  os << "\n[initial]\nkind = " << to_string(c.initial.kind) << "\n";
  if (c.initial.kind == InitialKind::fock) os << "m = " << c.initial.m << "\n";
  if (c.initial.kind == InitialKind::custom) {
    os << "amplitudes = ";
    for (std::size_t i = 0; i < c.initial.amplitudes.size(); ++i) {
      const auto& a = c.initial.amplitudes[i];
      os << (i ? ", " : "") << format_double(a.real()) << ":" << format_double(a.imag());
    }
    os << "\n";
  }
  if (c.model == ModelKind::classical) {
    os << "\n[classical]\n"
       << "gamma_f0 = " << format_double(c.classical.gamma_f0) << "\n"
       << "gamma = " << format_double(c.classical.gamma) << "\n";
  }
  if (c.sweep) {
    os << "\n[sweep]\nparameter = " << c.sweep->parameter << "\nvalues = " << join(c.sweep->values) << "\n";
  }
  return os.str();
}

std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& config) {
  if (!config.sweep) return {config};
  pt::ptree tree = parse_tree(to_config_text(config));
  tree.erase("sweep");
  const pt::ptree::path_type path(config.sweep->parameter, '.');
  std::vector<ExperimentConfig> out;
  for (double v : config.sweep->values) {
    pt::ptree point = tree;
    point.put(path, format_double(v));
    out.push_back(from_tree(point));
  }
  return out;
}

}  // namespace qcp
