#include "grating/config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace grating {

namespace {

Profile triangle_wave(double period, double amplitude) {
  return Profile::polyline(
      {{0.0, -amplitude}, {period / 2.0, amplitude}, {period, -amplitude}});
}

Profile sawtooth3(double period, double amplitude) {
  std::vector<Vec2> pts;
  for (int k = 0; k < 3; ++k) {
    pts.push_back({period * (2 * k) / 6.0, -amplitude});
    pts.push_back({period * (2 * k + 1) / 6.0, amplitude});
  }
  pts.push_back({period, -amplitude});
  return Profile::polyline(std::move(pts));
}

Profile default_profile(Scenario s, double period) {
  switch (s) {
    case Scenario::Example2:
      return triangle_wave(period, 0.5);
    case Scenario::Example3:
      return sawtooth3(period, 0.5);
    case Scenario::Example4:
      return Profile::trig(0.1, 0.15, 1.0, 0.35, 5.0);
    default:
      return Profile::flat(0.0);
  }
}

}  // namespace

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Example1: return "example1";
    case Scenario::Example2: return "example2";
    case Scenario::Example3: return "example3";
    case Scenario::Example4: return "example4";
    case Scenario::Custom: return "custom";
  }
  return "?";
}

const char* mode_name(RunMode m) {
  switch (m) {
    case RunMode::Adaptive: return "adaptive";
    case RunMode::Uniform: return "uniform";
    case RunMode::Both: return "both";
  }
  return "?";
}

RunConfig scenario_defaults(Scenario scenario) {
  RunConfig c;
  c.scenario = scenario;
  c.params.omega = 1.0;
  c.params.kappa = 1.0;
  c.params.rho = 1.0;
  c.params.rho_f = 1.0;
  c.params.lambda = 1.0;
  c.params.mu = 1.0;
  c.params.theta = M_PI / 6.0;
  c.params.period = 4.0;
  switch (scenario) {
    case Scenario::Example1:
    case Scenario::Custom:
      break;
    case Scenario::Example2:
      c.params.theta = M_PI / 4.0;
      break;
    case Scenario::Example3:
      c.params.mu = 3.0;
      c.params.lambda = 2.0;
      c.params.theta = M_PI / 4.0;
      c.params.period = 5.0;
      break;
    case Scenario::Example4:
      c.params.mu = 4.0;
      c.params.lambda = 2.0;
      c.params.theta = M_PI / 5.0;
      c.params.period = 2.0 * M_PI;
      c.params.kappa = 5.0;
      break;
  }
  c.geometry.period = c.params.period;
  c.geometry.profile = default_profile(scenario, c.params.period);
  c.geometry.b_prime = c.geometry.profile.max_height(c.geometry.period);
  c.geometry.b = c.geometry.b_prime + 0.5;
  return c;
}

void RunConfig::validate() const {
  params.validate();
  geometry.validate();
  adapt.validate();
  if (std::abs(params.period - geometry.period) > 1e-14)
    throw ValidationError("params.period and geometry.period diverged");
}

namespace {

double to_double(const std::string& v, int line) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + v + "'", line);
  }
  if (pos != v.size()) throw ParseError("trailing characters after number '" + v + "'", line);
  return d;
}

int to_int(const std::string& v, int line) {
  const double d = to_double(v, line);
  if (d != std::floor(d)) throw ParseError("expected an integer, got '" + v + "'", line);
  return static_cast<int>(d);
}

bool to_bool(const std::string& v, int line) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ParseError("expected a boolean, got '" + v + "'", line);
}

std::string trim(std::string s) {
  const auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && issp(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && issp(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

Profile parse_polyline_points(const std::string& v, int line) {
  // "x0:y0,x1:y1,..."
  std::vector<Vec2> pts;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ParseError("profile_points entries must look like x:y", line);
    pts.push_back({to_double(trim(item.substr(0, colon)), line),
                   to_double(trim(item.substr(colon + 1)), line)});
  }
  try {
    return Profile::polyline(std::move(pts));
  } catch (const InvalidParams& err) {
    throw ValidationError(err.what());
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  struct Pair {
    std::string key, value;
    int line;
  };
  std::vector<Pair> pairs;
  {
    std::stringstream ss(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(ss, raw)) {
      ++line_no;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      raw = trim(raw);
      if (raw.empty()) continue;
      const auto eq = raw.find('=');
      if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
      const std::string key = trim(raw.substr(0, eq));
      const std::string value = trim(raw.substr(eq + 1));
      if (key.empty()) throw ParseError("empty key", line_no);
      if (value.empty()) throw ParseError("empty value for key '" + key + "'", line_no);
      pairs.push_back({key, value, line_no});
    }
  }
  if (pairs.empty()) throw ParseError("configuration is empty", 1);

  Scenario scenario = Scenario::Example1;
  bool scenario_seen = false;
  for (const Pair& p : pairs) {
    if (p.key != "scenario") continue;
    if (p.value == "example1") scenario = Scenario::Example1;
    else if (p.value == "example2") scenario = Scenario::Example2;
    else if (p.value == "example3") scenario = Scenario::Example3;
    else if (p.value == "example4") scenario = Scenario::Example4;
    else if (p.value == "custom") scenario = Scenario::Custom;
    else throw ValidationError("unknown scenario '" + p.value + "'");
    scenario_seen = true;
  }
  if (!scenario_seen) throw ValidationError("config must name a scenario");

  RunConfig cfg = scenario_defaults(scenario);
  bool profile_overridden = false;
  bool b_overridden = false;
  double b_value = 0.0;
  std::string profile_kind;
  double profile_height = 0.0;
  bool height_seen = false;

  for (const Pair& p : pairs) {
    const std::string& k = p.key;
    const std::string& v = p.value;
    if (k == "scenario") continue;
    else if (k == "omega") cfg.params.omega = to_double(v, p.line);
    else if (k == "kappa") cfg.params.kappa = to_double(v, p.line);
    else if (k == "theta") cfg.params.theta = to_double(v, p.line);
    else if (k == "rho_f") cfg.params.rho_f = to_double(v, p.line);
    else if (k == "rho") cfg.params.rho = to_double(v, p.line);
    else if (k == "lambda") cfg.params.lambda = to_double(v, p.line);
    else if (k == "mu") cfg.params.mu = to_double(v, p.line);
    else if (k == "period") cfg.params.period = to_double(v, p.line);
    else if (k == "b") { b_overridden = true; b_value = to_double(v, p.line); }
    else if (k == "profile") { profile_overridden = true; profile_kind = v; }
    else if (k == "profile_height") { height_seen = true; profile_height = to_double(v, p.line); }
    else if (k == "profile_points") { profile_overridden = true; profile_kind = "polyline"; cfg.geometry.profile = parse_polyline_points(v, p.line); }
    else if (k == "tolerance") cfg.adapt.tolerance = to_double(v, p.line);
    else if (k == "tau") cfg.adapt.tau = to_double(v, p.line);
    else if (k == "max_iterations") cfg.adapt.max_iterations = to_int(v, p.line);
    else if (k == "max_dof") cfg.adapt.max_dof = to_int(v, p.line);
    else if (k == "dtn_tol") cfg.adapt.dtn_tol = to_double(v, p.line);
    else if (k == "initial_h") cfg.adapt.initial_h = to_double(v, p.line);
    else if (k == "mode") {
      if (v == "adaptive") cfg.mode = RunMode::Adaptive;
      else if (v == "uniform") cfg.mode = RunMode::Uniform;
      else if (v == "both") cfg.mode = RunMode::Both;
      else throw ValidationError("mode must be adaptive|uniform|both");
    }
    else if (k == "output_dir") cfg.output_dir = v;
    else if (k == "export_vtk") cfg.export_vtk = to_bool(v, p.line);
    else throw ParseError("unknown key '" + k + "'", p.line);
  }

  cfg.geometry.period = cfg.params.period;
  if (profile_overridden) {
    if (profile_kind == "flat")
      cfg.geometry.profile = Profile::flat(height_seen ? profile_height : 0.0);
    else if (profile_kind == "example4")
      cfg.geometry.profile = Profile::trig(0.1, 0.15, 1.0, 0.35, 5.0);
    else if (profile_kind == "polyline") {
      if (cfg.geometry.profile.kind() != Profile::Kind::Polyline)
        throw ValidationError("profile=polyline requires profile_points");
    } else
      throw ValidationError("profile must be flat|example4|polyline");
  } else {
    cfg.geometry.profile = default_profile(scenario, cfg.params.period);
    if (height_seen) throw ValidationError("profile_height requires profile=flat");
  }
  cfg.geometry.b_prime = cfg.geometry.profile.max_height(cfg.geometry.period);
  cfg.geometry.b = b_overridden ? b_value : cfg.geometry.b_prime + 0.5;

  try {
    cfg.validate();
  } catch (const InvalidParams& err) {
    throw ValidationError(err.what());
  }
  return cfg;
}

}  // namespace grating
