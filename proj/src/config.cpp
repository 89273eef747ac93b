#include "pointnls/config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pointnls {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// --- minimal TOML subset: [section], key = value, inline arrays ---

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

json toml_scalar(const std::string& raw) {
  const std::string v = strip(raw);
  if (v.empty()) throw std::runtime_error("toml: empty value");
  if (v.front() == '"' && v.back() == '"' && v.size() >= 2)
    return v.substr(1, v.size() - 2);
  if (v == "true") return true;
  if (v == "false") return false;
  try {
    size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) {
      if (v.find_first_of(".eE") == std::string::npos)
        return std::stoll(v);
      return d;
    }
  } catch (...) {
  }
  throw std::runtime_error("toml: cannot parse value '" + v + "'");
}

json toml_value(const std::string& raw) {
  const std::string v = strip(raw);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw std::runtime_error("toml: unclosed array");
    json arr = json::array();
    std::string inner = v.substr(1, v.size() - 2);
    std::string item;
    for (char ch : inner) {
      if (ch == ',') {
        if (!strip(item).empty()) arr.push_back(toml_scalar(item));
        item.clear();
      } else {
        item += ch;
      }
    }
    if (!strip(item).empty()) arr.push_back(toml_scalar(item));
    return arr;
  }
  return toml_scalar(v);
}

json parse_toml_subset(const std::string& text) {
  json root = json::object();
  json* section = &root;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::runtime_error("toml: bad section");
      const std::string name = strip(line.substr(1, line.size() - 2));
      section = &root[name];
      if (section->is_null()) *section = json::object();
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("toml: missing '='");
    const std::string key = strip(line.substr(0, eq));
    (*section)[key] = toml_value(line.substr(eq + 1));
  }
  return root;
}

// --- json <-> SweepConfig ---

void apply_json(SweepConfig& cfg, const json& j) {
  static const std::vector<std::string> sections = {
      "form_factor", "physics", "time", "sweep", "report",
      "seed",        "threads"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(sections.begin(), sections.end(), it.key()) ==
        sections.end())
      throw std::runtime_error("config: unknown key '" + it.key() + "'");
  }
  if (j.contains("form_factor")) {
    const json& f = j["form_factor"];
    if (f.contains("kind")) cfg.ff_kind = f["kind"].get<std::string>();
    if (f.contains("sigma")) cfg.sigma = f["sigma"].get<double>();
    if (f.contains("table_path"))
      cfg.table_path = f["table_path"].get<std::string>();
  }
  if (j.contains("physics")) {
    const json& p = j["physics"];
    if (p.contains("gamma")) cfg.gamma = p["gamma"].get<double>();
    if (p.contains("mu")) cfg.mu = p["mu"].get<double>();
    if (p.contains("q0")) {
      const json& q = p["q0"];
      if (q.is_array() && q.size() == 2)
        cfg.q0 = cplx(q[0].get<double>(), q[1].get<double>());
      else
        cfg.q0 = cplx(q.get<double>(), 0.0);
    }
    if (p.contains("width")) cfg.width = p["width"].get<double>();
    if (p.contains("tail_scale")) cfg.tail_scale = p["tail_scale"].get<double>();
    if (p.contains("compensated")) cfg.compensated = p["compensated"].get<bool>();
  }
  if (j.contains("time")) {
    const json& t = j["time"];
    if (t.contains("T")) cfg.T = t["T"].get<double>();
    if (t.contains("N")) cfg.base_steps = t["N"].get<int>();
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    if (s.contains("epsilons"))
      cfg.epsilons = s["epsilons"].get<std::vector<double>>();
    if (s.contains("double_steps")) cfg.double_steps = s["double_steps"].get<bool>();
  }
  if (j.contains("report")) {
    const json& r = j["report"];
    if (r.contains("samples")) cfg.samples = r["samples"].get<int>();
  }
  if (j.contains("seed")) cfg.seed = j["seed"].get<long>();
  if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
}

json to_json(const SweepConfig& cfg) {
  json j;
  j["form_factor"] = {{"kind", cfg.ff_kind}, {"sigma", cfg.sigma}};
  if (!cfg.table_path.empty()) j["form_factor"]["table_path"] = cfg.table_path;
  j["physics"] = {{"gamma", cfg.gamma},
                  {"mu", cfg.mu},
                  {"q0", {cfg.q0.real(), cfg.q0.imag()}},
                  {"width", cfg.width},
                  {"tail_scale", cfg.tail_scale},
                  {"compensated", cfg.compensated}};
  j["time"] = {{"T", cfg.T}, {"N", cfg.base_steps}};
  j["sweep"] = {{"epsilons", cfg.epsilons}, {"double_steps", cfg.double_steps}};
  j["report"] = {{"samples", cfg.samples}};
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  return j;
}

std::string eps_tag(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", eps);
  std::string s = buf;
  for (char& c : s)
    if (c == '.') c = 'p';
  return s;
}

}  // namespace

SweepConfig parse_config_json_text(const std::string& text) {
  SweepConfig cfg;
  apply_json(cfg, json::parse(text));
  return cfg;
}

SweepConfig parse_config_toml_text(const std::string& text) {
  SweepConfig cfg;
  apply_json(cfg, parse_toml_subset(text));
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml")
    return parse_config_toml_text(text);
  return parse_config_json_text(text);
}

std::string config_to_json_text(const SweepConfig& cfg) {
  return to_json(cfg).dump(2) + "\n";
}

std::string report_to_json_text(const ConvergenceReport& rep) {
  json j;
  j["config"] = to_json(rep.config);
  j["version"] = version_string();
  j["partial"] = rep.partial;
  if (rep.partial) j["failure"] = rep.failure_message;
  j["fitted"] = {{"delta_hat", rep.delta_hat},
                 {"r2", rep.r2_delta},
                 {"slope_init", rep.slope_init},
                 {"slope_gap", rep.slope_gap},
                 {"slope_Y", rep.slope_y},
                 {"dropped_largest_eps", rep.dropped_largest_eps}};
  j["runs"] = json::array();
  for (const RunMetrics& m : rep.runs) {
    json r = {{"eps", m.eps},
              {"steps", m.steps},
              {"sup_err", m.sup_err},
              {"init_err", m.init_err},
              {"gap", m.gap},
              {"y_norm", m.y_norm},
              {"mass_drift_scaled", m.mass_drift_scaled},
              {"energy_drift_scaled", m.energy_drift_scaled},
              {"energy_forms_gap", m.energy_forms_gap},
              {"mass_drift_limit", m.mass_drift_limit},
              {"energy_drift_limit", m.energy_drift_limit},
              {"bc_residual_max", m.bc_residual_max},
              {"q_sup_scaled", m.q_sup_scaled},
              {"grad_phi_sup", m.grad_phi_sup},
              {"diag_ratio", m.diag_ratio},
              {"wall_ms", m.wall_ms},
              {"sample_times", m.sample_times},
              {"sample_errors", m.sample_errors}};
    j["runs"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

std::string run_manifest_text(const SweepConfig& cfg, double eps, int steps,
                              double wall_ms) {
  json j;
  j["config"] = to_json(cfg);
  j["eps"] = eps;
  j["steps"] = steps;
  j["wall_ms"] = wall_ms;
  j["version"] = version_string();
  j["seed"] = cfg.seed;
  return j.dump(2) + "\n";
}

std::pair<std::vector<double>, std::vector<double>> read_profile_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile table " + path);
  std::vector<double> x, rho;
  std::string line;
  while (std::getline(in, line)) {
    const std::string s = strip(line);
    if (s.empty() || !(std::isdigit(s[0]) || s[0] == '-' || s[0] == '+' ||
                       s[0] == '.'))
      continue;  // header or comment
    double a, b;
    if (std::sscanf(s.c_str(), "%lf , %lf", &a, &b) == 2 ||
        std::sscanf(s.c_str(), "%lf %lf", &a, &b) == 2) {
      x.push_back(a);
      rho.push_back(b);
    }
  }
  return {x, rho};
}

void write_scaled_run_csv(const std::string& out_dir, const SweepConfig& cfg,
                          const ScaledRun& run,
                          const std::array<TimeSeries, 4>& y,
                          const RunMetrics& m) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string base = out_dir + "/scaled_eps" + eps_tag(run.eps);
  std::ofstream out(base + ".csv");
  out << "t,re_q,im_q,mass,energy_form1,energy_form2,absY1,absY2,absY3,absY4\n";
  // mass/energy are sampled on the report's time subset; other rows leave the
  // expensive columns empty.
  std::vector<int> sample_idx;
  for (size_t s = 0; s < m.sample_times.size(); ++s)
    sample_idx.push_back(int(std::llround(m.sample_times[s] / run.tgrid.dt())));
  size_t si = 0;
  for (int j = 0; j <= run.tgrid.steps; ++j) {
    out << fmt(run.tgrid.node(j)) << ',' << fmt(run.q_traj.q[j].real()) << ','
        << fmt(run.q_traj.q[j].imag()) << ',';
    if (si < sample_idx.size() && sample_idx[si] == j) {
      const RadialField psi = reconstruct_scaled_state(run, j);
      const auto [e1, e2] = scaled_energy(psi, run.ff, run.eps, run.params);
      double mass = 0.0;
      if (cfg.compensated) mass = l2_norm(psi);
      out << fmt(mass) << ',' << fmt(e1) << ',' << fmt(e2);
      ++si;
    } else {
      out << ",,";
    }
    out << ',' << fmt(std::abs(y[0].v[j])) << ',' << fmt(std::abs(y[1].v[j]))
        << ',' << fmt(std::abs(y[2].v[j])) << ',' << fmt(std::abs(y[3].v[j]))
        << '\n';
  }
  write_file(base + "_manifest.json",
             run_manifest_text(cfg, run.eps, run.tgrid.steps, m.wall_ms));
}

void write_limit_run_csv(const std::string& out_dir, const SweepConfig& cfg,
                         const ChargeTrajectory& traj, const PhysParams& params,
                         const RunMetrics& m) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string base = out_dir + "/limit_eps" + eps_tag(m.eps);
  std::ofstream out(base + ".csv");
  out << "t,re_q,im_q,abs_q,mass,energy,bc_residual\n";
  std::vector<int> sample_idx;
  for (size_t s = 0; s < m.sample_times.size(); ++s)
    sample_idx.push_back(int(std::llround(m.sample_times[s] / traj.grid.dt())));
  size_t si = 0;
  for (int j = 0; j <= traj.grid.steps; ++j) {
    out << fmt(traj.grid.node(j)) << ',' << fmt(traj.q[j].real()) << ','
        << fmt(traj.q[j].imag()) << ',' << fmt(std::abs(traj.q[j])) << ',';
    if (si < sample_idx.size() && sample_idx[si] == j) {
      const DomainElement elem = reconstruct_state(traj, params, j);
      double mass = 0.0;
      if (cfg.compensated) mass = l2_norm(reconstruct_psi(traj, params, j));
      out << fmt(mass) << ',' << fmt(limit_energy(elem, params)) << ','
          << fmt(boundary_residual(elem, params));
      ++si;
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

void persist_report(const ConvergenceReport& rep) {
  namespace fs = std::filesystem;
  const std::string dir = rep.config.out_dir;
  fs::create_directories(dir);
  write_file(dir + "/report.json", report_to_json_text(rep));
  std::ofstream out(dir + "/errors.csv");
  out << "eps,sup_err,init_err,gap,y_norm\n";
  for (const RunMetrics& m : rep.runs)
    out << fmt(m.eps) << ',' << fmt(m.sup_err) << ',' << fmt(m.init_err) << ','
        << fmt(m.gap) << ',' << fmt(m.y_norm) << '\n';
}

std::string version_string() { return "pointnls 0.1.0"; }

}  // namespace pointnls
