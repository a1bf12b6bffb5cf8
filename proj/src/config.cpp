#include "ks/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "ks/exponents.hpp"

namespace ks {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using SectionMap = std::map<std::string, std::map<std::string, Entry>>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

SectionMap parse_raw(const std::string& text) {
  static const std::set<std::string> known_sections{"grid", "kinetics", "init", "run", "sweep"};
  SectionMap out;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!known_sections.count(section))
        throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
      out[section]; // section may legitimately stay empty
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    auto [it, fresh] = out[section].emplace(key, Entry{value, lineno});
    if (!fresh)
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "' in [" +
                        section + "]");
  }
  return out;
}

// Tracks consumption so leftover keys can be reported as unknown.
class Reader {
 public:
  Reader(SectionMap raw) : raw_(std::move(raw)) {}

  bool has(const std::string& sec, const std::string& key) const {
    auto s = raw_.find(sec);
    return s != raw_.end() && s->second.count(key);
  }
  bool has_section(const std::string& sec) const { return raw_.count(sec) != 0; }

  std::string get_string(const std::string& sec, const std::string& key,
                         const std::string& dflt) {
    const Entry* e = take(sec, key);
    return e ? e->value : dflt;
  }

  double get_double(const std::string& sec, const std::string& key, double dflt) {
    const Entry* e = take(sec, key);
    if (!e) return dflt;
    return to_double(sec, key, *e);
  }

  int get_int(const std::string& sec, const std::string& key, int dflt) {
    const Entry* e = take(sec, key);
    if (!e) return dflt;
    const double v = to_double(sec, key, *e);
    if (v != std::floor(v)) fail(*e, key, "expected an integer");
    return static_cast<int>(v);
  }

  bool get_bool(const std::string& sec, const std::string& key, bool dflt) {
    const Entry* e = take(sec, key);
    if (!e) return dflt;
    if (e->value == "true") return true;
    if (e->value == "false") return false;
    fail(*e, key, "expected true or false");
    return dflt;
  }

  std::vector<double> get_list(const std::string& sec, const std::string& key,
                               std::vector<double> dflt) {
    const Entry* e = take(sec, key);
    if (!e) return dflt;
    std::vector<double> out;
    std::istringstream in(e->value);
    std::string item;
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (item.empty()) fail(*e, key, "empty list element");
      Entry tmp{item, e->line};
      out.push_back(to_double(sec, key, tmp));
    }
    return out;
  }

  [[noreturn]] void fail_key(const std::string& sec, const std::string& key,
                             const std::string& why) const {
    auto s = raw_.find(sec);
    int line = 0;
    if (s != raw_.end()) {
      auto k = s->second.find(key);
      if (k != s->second.end()) line = k->second.line;
    }
    throw ConfigError("line " + std::to_string(line) + ": key '" + key + "' in [" + sec + "]: " +
                      why);
  }

  void check_consumed() const {
    for (const auto& [sec, keys] : raw_)
      for (const auto& [key, entry] : keys)
        if (!consumed_.count(sec + "/" + key))
          throw ConfigError("line " + std::to_string(entry.line) + ": unknown key '" + key +
                            "' in [" + sec + "]");
  }

 private:
  const Entry* take(const std::string& sec, const std::string& key) {
    auto s = raw_.find(sec);
    if (s == raw_.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    consumed_.insert(sec + "/" + key);
    return &k->second;
  }

  double to_double(const std::string& sec, const std::string& key, const Entry& e) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(e.value, &pos);
      if (pos != e.value.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      fail(e, key, "expected a number, got '" + e.value + "'");
    }
    (void)sec;
    return 0;
  }

  [[noreturn]] void fail(const Entry& e, const std::string& key, const std::string& why) {
    throw ConfigError("line " + std::to_string(e.line) + ": key '" + key + "': " + why);
  }

  SectionMap raw_;
  std::set<std::string> consumed_;
};

SimConfig build_sim_config(Reader& r) {
  SimConfig cfg;

  // [grid]
  const int dim = r.get_int("grid", "dim", 1);
  const double lx = r.get_double("grid", "lx", 1.0);
  const int nx = r.get_int("grid", "nx", 64);
  if (dim == 1) {
    if (r.has("grid", "ly") || r.has("grid", "ny"))
      r.fail_key("grid", r.has("grid", "ly") ? "ly" : "ny", "only valid for dim = 2");
    cfg.grid = build_grid_1d(lx, nx);
  } else if (dim == 2) {
    const double ly = r.get_double("grid", "ly", lx);
    const int ny = r.get_int("grid", "ny", nx);
    cfg.grid = build_grid_2d(lx, ly, nx, ny);
  } else {
    r.fail_key("grid", "dim", "must be 1 or 2");
  }

  // [kinetics]
  ModelParams mp;
  mp.n = dim;
  mp.alpha = r.get_double("kinetics", "alpha", 0.0);
  mp.beta = r.get_double("kinetics", "beta", 0.0);
  mp.gamma = r.get_double("kinetics", "gamma", 1.0);
  mp.a = r.get_double("kinetics", "a", 0.0);
  mp.mu = r.get_double("kinetics", "mu", 1.0);
  mp.m1 = r.get_double("kinetics", "m1", 1.0);
  mp.m2 = r.get_double("kinetics", "m2", 1.0);
  const double rr = r.get_double("kinetics", "r", 0.0);
  const double b = r.get_double("kinetics", "b", 0.25);
  const std::string preset = r.get_string("kinetics", "preset", "power_law");
  if (!(mp.gamma >= 1.0)) r.fail_key("kinetics", "gamma", "must be >= 1");
  if (!(mp.mu > 0.0)) r.fail_key("kinetics", "mu", "must be > 0");
  if (!(mp.a >= 0.0)) r.fail_key("kinetics", "a", "must be >= 0");
  if (!(mp.m1 > 0.0)) r.fail_key("kinetics", "m1", "must be > 0");
  if (!(mp.m2 > 0.0)) r.fail_key("kinetics", "m2", "must be > 0");
  try {
    if (preset == "power_law")
      cfg.kinetics = make_kinetics(KineticsPreset::PowerLaw, mp, rr, b);
    else if (preset == "cubic_bistable")
      cfg.kinetics = make_kinetics(KineticsPreset::CubicBistable, mp, rr, b);
    else
      r.fail_key("kinetics", "preset", "must be power_law or cubic_bistable");
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("[kinetics]: ") + err.what());
  }
  cfg.kinetics.zero_source = r.get_bool("kinetics", "f_zero", false);
  cfg.kinetics.zero_sensitivity = r.get_bool("kinetics", "s_zero", false);

  // [init]
  const std::string ikind = r.get_string("init", "preset", "cosine");
  if (ikind == "constant") cfg.init.kind = InitPreset::Constant;
  else if (ikind == "cosine") cfg.init.kind = InitPreset::Cosine;
  else if (ikind == "gaussian") cfg.init.kind = InitPreset::Gaussian;
  else if (ikind == "random") cfg.init.kind = InitPreset::Random;
  else r.fail_key("init", "preset", "must be constant, cosine, gaussian or random");
  cfg.init.base = r.get_double("init", "base", 1.0);
  cfg.init.amplitude = r.get_double("init", "amplitude", 0.0);
  cfg.init.width = r.get_double("init", "width", 0.1);
  cfg.init.u_max = r.get_double("init", "u_max", 1.0);
  const std::string v0 = r.get_string("init", "v0", "smooth");
  if (v0 == "smooth") cfg.init.v0_mode = V0Mode::Smoothed;
  else if (v0 == "constant") cfg.init.v0_mode = V0Mode::Constant;
  else if (v0 == "same") cfg.init.v0_mode = V0Mode::SameAsU;
  else r.fail_key("init", "v0", "must be smooth, constant or same");
  cfg.init.v0_value = r.get_double("init", "v0_value", 0.0);
  cfg.init.v0_tau = r.get_double("init", "v0_tau", 0.1);

  // [run]
  cfg.run.t_end = r.get_double("run", "t_end", 10.0);
  cfg.run.u_cap = r.get_double("run", "u_cap", 1e6);
  cfg.run.dt_max = r.get_double("run", "dt_max", 1e-2);
  cfg.run.sigma = r.get_double("run", "sigma", 0.4);
  cfg.run.record_every = r.get_double("run", "record_every", cfg.run.t_end / 200.0);
  cfg.init.seed = static_cast<unsigned>(r.get_int("run", "seed", 0));
  cfg.run.snapshot_times = r.get_list("run", "snapshots", {});
  cfg.run.lp_list = r.get_list("run", "lp", {2.0});
  cfg.run.ls_list = r.get_list("run", "ls", {2.0});
  if (!(cfg.run.t_end > 0.0)) r.fail_key("run", "t_end", "must be > 0");
  if (!(cfg.run.sigma > 0.0 && cfg.run.sigma < 1.0)) r.fail_key("run", "sigma", "must be in (0,1)");
  if (!(cfg.run.dt_max > 0.0)) r.fail_key("run", "dt_max", "must be > 0");
  if (!(cfg.run.record_every > 0.0)) r.fail_key("run", "record_every", "must be > 0");
  for (double p : cfg.run.lp_list)
    if (!(p >= 1.0)) r.fail_key("run", "lp", "entries must be >= 1");
  for (double s : cfg.run.ls_list)
    if (!(s >= 1.0)) r.fail_key("run", "ls", "entries must be >= 1");

  // the mass monitors read integral(u^gamma) through the lp column at gamma
  const double mg = cfg.kinetics.params.gamma;
  if (std::none_of(cfg.run.lp_list.begin(), cfg.run.lp_list.end(),
                   [mg](double p) { return std::abs(p - mg) <= 1e-9; }))
    cfg.run.lp_list.push_back(mg);

  const bool has_ep = r.has("run", "energy_p"), has_eq = r.has("run", "energy_q");
  cfg.run.energy_p = r.get_double("run", "energy_p", 0.0);
  cfg.run.energy_q = r.get_double("run", "energy_q", 0.0);
  if (has_ep != has_eq) r.fail_key("run", has_ep ? "energy_p" : "energy_q",
                                   "energy_p and energy_q must be given together");
  if (has_ep) {
    if (!(cfg.run.energy_p > 1.0)) r.fail_key("run", "energy_p", "must be > 1");
    if (!(cfg.run.energy_q > 1.0)) r.fail_key("run", "energy_q", "must be > 1");
  } else {
    // default: the feasibility witness when it exists, else (2, 2)
    cfg.run.energy_p = 2.0;
    cfg.run.energy_q = 2.0;
    if (cfg.grid.dim >= 2) {
      try {
        const auto rep = feasible_pq(cfg.kinetics.params,
                                     cfg.kinetics.params.gamma >= 2.0
                                         ? FeasibilityCase::Quadratic
                                         : FeasibilityCase::SubQuadratic);
        cfg.run.energy_p = rep.p_witness;
        cfg.run.energy_q = rep.q_witness;
      } catch (const std::exception&) {
        // uncovered parameters: keep the generic (2, 2)
      }
    }
  }

  return cfg;
}

SweepConfig build_sweep_config(Reader& r, SimConfig base) {
  SweepConfig sw;
  sw.base = std::move(base);

  auto read_axis = [&](const std::string& which) {
    SweepAxis ax;
    ax.name = r.get_string("sweep", which, "");
    if (ax.name != "alpha" && ax.name != "beta" && ax.name != "gamma")
      r.fail_key("sweep", which, "must be one of alpha, beta, gamma");
    ax.lo = r.get_double("sweep", which + "_min", 0.0);
    ax.hi = r.get_double("sweep", which + "_max", 0.0);
    ax.steps = r.get_int("sweep", which + "_steps", 0);
    if (!std::isfinite(ax.lo) || !std::isfinite(ax.hi) || !(ax.lo < ax.hi))
      r.fail_key("sweep", which + "_min", "need finite " + which + "_min < " + which + "_max");
    if (ax.steps < 2) r.fail_key("sweep", which + "_steps", "must be >= 2");
    return ax;
  };
  sw.axis1 = read_axis("axis1");
  sw.axis2 = read_axis("axis2");
  if (sw.axis1.name == sw.axis2.name) r.fail_key("sweep", "axis2", "axes must be disjoint");
  if (sw.base.kinetics.preset == KineticsPreset::CubicBistable &&
      (sw.axis1.name == "gamma" || sw.axis2.name == "gamma"))
    r.fail_key("sweep", "axis1", "gamma is fixed at 3 for the cubic preset");
  sw.workers = r.get_int("sweep", "workers", 4);
  if (sw.workers < 1) r.fail_key("sweep", "workers", "must be >= 1");
  return sw;
}

} // namespace

Kinetics apply_axis_value(const Kinetics& base, const std::string& axis, double value) {
  Kinetics k = base;
  if (axis == "alpha") k.params.alpha = value;
  else if (axis == "beta") k.params.beta = value;
  else if (axis == "gamma") k.params.gamma = value;
  else throw ConfigError("unknown sweep axis '" + axis + "'");
  k.params.validate();
  return k;
}

ParsedConfig parse_config(const std::string& text) {
  Reader r(parse_raw(text));
  SimConfig sim = build_sim_config(r);
  if (r.has_section("sweep")) {
    SweepConfig sw = build_sweep_config(r, std::move(sim));
    r.check_consumed();
    return sw;
  }
  r.check_consumed();
  return sim;
}

SimConfig parse_sim_config(const std::string& text) {
  auto parsed = parse_config(text);
  if (auto* sim = std::get_if<SimConfig>(&parsed)) return std::move(*sim);
  throw ConfigError("expected a simulation config, found a [sweep] section");
}

} // namespace ks
