#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "output.hpp"
#include "tgqsl/error.hpp"

namespace tgqsl::cli {

namespace {

const std::vector<std::string> kKinds{"eigens",   "quench",         "sta-design",      "sta-run",
                                      "tf-scan",  "coherence-scan", "infidelity-scan", "qsl-report"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

[[noreturn]] void config_error(int line, const std::string& what) {
  std::ostringstream msg;
  if (line > 0) msg << "line " << line << ": ";
  msg << what;
  fail(ErrorKind::config, msg.str());
}

double to_real(const std::string& v) {
  std::size_t used = 0;
  const double x = std::stod(v, &used);
  if (used != v.size()) throw std::invalid_argument(v);
  return x;
}

int to_int(const std::string& v) {
  std::size_t used = 0;
  const int x = std::stoi(v, &used);
  if (used != v.size()) throw std::invalid_argument(v);
  return x;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw std::invalid_argument(v);
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ' ';
    if constexpr (std::is_same_v<T, double>) s += format_number(v[k]);
    else if constexpr (std::is_same_v<T, std::string>) s += v[k];
    else s += std::to_string(v[k]);
  }
  return s;
}

using Setter = void (*)(ExperimentConfig&, const std::string&);

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> table{
      {"experiment",
       {{"kind", [](ExperimentConfig& c, const std::string& v) { c.kind = v; }},
        {"seed", [](ExperimentConfig& c, const std::string& v) { c.seed = to_int(v); }}}},
      {"system",
       {{"particles", [](ExperimentConfig& c, const std::string& v) { c.particles = to_int(v); }},
        {"particle_list",
         [](ExperimentConfig& c, const std::string& v) {
           c.particle_list.clear();
           for (double x : parse_real_list(v)) {
             if (x != std::round(x)) throw std::invalid_argument(v);
             c.particle_list.push_back(static_cast<int>(x));
           }
         }},
        {"q", [](ExperimentConfig& c, const std::string& v) { c.q = to_int(v); }},
        {"lambda_i", [](ExperimentConfig& c, const std::string& v) { c.lambda_i = to_real(v); }},
        {"lambda_f", [](ExperimentConfig& c, const std::string& v) { c.lambda_f = to_real(v); }},
        {"statistics", [](ExperimentConfig& c, const std::string& v) { c.statistics = v; }}}},
      {"grid",
       {{"half_width", [](ExperimentConfig& c, const std::string& v) { c.half_width = to_real(v); }},
        {"points", [](ExperimentConfig& c, const std::string& v) { c.grid_points = to_int(v); }}}},
      {"time",
       {{"t_f", [](ExperimentConfig& c, const std::string& v) { c.t_f = to_real(v); }},
        {"t_f_list", [](ExperimentConfig& c, const std::string& v) { c.t_f_list = parse_real_list(v); }},
        {"dt", [](ExperimentConfig& c, const std::string& v) { c.dt = to_real(v); }},
        {"record_dt", [](ExperimentConfig& c, const std::string& v) { c.record_dt = to_real(v); }}}},
      {"sta",
       {{"design_index", [](ExperimentConfig& c, const std::string& v) { c.design_index = to_int(v); }},
        {"samples", [](ExperimentConfig& c, const std::string& v) { c.samples = to_int(v); }},
        {"ramp", [](ExperimentConfig& c, const std::string& v) { c.ramp = v; }},
        {"ramp_file", [](ExperimentConfig& c, const std::string& v) { c.ramp_file = v; }},
        {"ramps", [](ExperimentConfig& c, const std::string& v) { c.ramps = v == "none" ? std::vector<std::string>{} : split(v, ','); }}}},
      {"analysis",
       {{"speeds", [](ExperimentConfig& c, const std::string& v) { c.speeds = to_bool(v); }},
        {"levels", [](ExperimentConfig& c, const std::string& v) { c.levels = to_int(v); }}}},
      {"output", {{"svg", [](ExperimentConfig& c, const std::string& v) { c.svg = to_bool(v); }}}},
  };
  return table;
}

}  // namespace

bool ExperimentConfig::uses_ramp(const std::string& name) const {
  return std::find(ramps.begin(), ramps.end(), name) != ramps.end();
}

std::string ExperimentConfig::echo() const {
  std::ostringstream s;
  s << "kind=" << kind << " particles=" << particles << " particle_list=" << join(particle_list) << " q=" << q
    << " lambda_i=" << format_number(lambda_i) << " lambda_f=" << format_number(lambda_f)
    << " statistics=" << statistics << " half_width=" << format_number(half_width) << " points=" << grid_points
    << " t_f=" << format_number(t_f) << " t_f_list=" << join(t_f_list) << " dt=" << format_number(dt)
    << " record_dt=" << format_number(record_dt) << " design_index=" << design_index << " samples=" << samples
    << " ramp=" << ramp << " ramp_file=" << ramp_file << " ramps=" << join(ramps) << " speeds=" << speeds
    << " levels=" << levels << " seed=" << seed;
  return s.str();
}

ExperimentConfig default_config(const std::string& kind, bool paper_scale) {
  if (std::find(kKinds.begin(), kKinds.end(), kind) == kKinds.end()) config_error(0, "unknown experiment '" + kind + "'");
  ExperimentConfig c;
  c.kind = kind;
  if (paper_scale) {
    c.particles = 50;
    c.grid_points = 512;
    c.half_width = 12.0;
  }
  if (kind == "quench") c.t_f = 10.0;
  if (kind == "tf-scan") c.t_f_list = parse_real_list("0.5:3:0.1");
  if (kind == "coherence-scan") {
    c.q = 1;
    c.particle_list = {1, 2, 4, 8, 16};
    c.grid_points = 512;
    c.half_width = 12.0;
    c.statistics = "both";
  }
  if (kind == "infidelity-scan") {
    c.particle_list = paper_scale ? std::vector<int>{1, 2, 3, 4, 6, 10, 20, 30, 40, 50} : std::vector<int>{1, 2, 3, 4, 6, 10};
    c.statistics = "fermi";
    c.speeds = false;
  }
  return c;
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig c) {
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') config_error(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (!schema().count(section)) config_error(line, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) config_error(line, "expected key = value");
    if (section.empty()) config_error(line, "key outside of any section");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    const auto& keys = schema().at(section);
    const auto it = keys.find(key);
    if (it == keys.end()) config_error(line, "unknown key '" + key + "' in section [" + section + "]");
    if (value.empty()) config_error(line, "empty value for '" + key + "'");
    try {
      it->second(c, value);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      config_error(line, "invalid value '" + value + "' for '" + key + "'");
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) config_error(0, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

void validate(const ExperimentConfig& c) {
  auto check = [](bool ok, const std::string& what) {
    if (!ok) config_error(0, what);
  };
  check(std::find(kKinds.begin(), kKinds.end(), c.kind) != kKinds.end(), "unknown experiment '" + c.kind + "'");
  check(c.particles >= 1, "particles must be >= 1");
  for (int n : c.particle_list) check(n >= 1, "particle_list entries must be >= 1");
  check(c.q >= 1, "q must be >= 1");
  check(c.lambda_i > 0.0 && c.lambda_f > 0.0, "trap strengths must be positive");
  check(c.statistics == "fermi" || c.statistics == "tg" || c.statistics == "both",
        "statistics must be fermi, tg or both");
  check(c.half_width > 0.0, "half_width must be positive");
  check(c.grid_points >= 16, "grid needs at least 16 points");
  check(c.t_f > 0.0, "t_f must be positive");
  for (double t : c.t_f_list) check(t > 0.0, "t_f_list entries must be positive");
  check(std::is_sorted(c.t_f_list.begin(), c.t_f_list.end()), "t_f_list must increase");
  check(c.dt > 0.0 && c.record_dt >= c.dt, "need 0 < dt <= record_dt");
  check(c.samples >= 4, "samples must be >= 4");
  check(c.ramp == "sta" || c.ramp == "linear" || c.ramp == "constant" || c.ramp == "file",
        "ramp must be sta, linear, constant or file");
  if (c.ramp == "file") check(std::filesystem::exists(c.ramp_file), "ramp_file '" + c.ramp_file + "' does not exist");
  for (const auto& r : c.ramps) check(r == "n0" || r == "nmax" || r == "linear", "ramps entries must be n0, nmax or linear");
  check(c.levels >= 1, "levels must be >= 1");
  if (c.kind == "tf-scan") check(!c.t_f_list.empty(), "tf-scan needs t_f_list");
  if (c.kind == "coherence-scan" || c.kind == "infidelity-scan")
    check(!c.particle_list.empty(), c.kind + " needs particle_list");
  if (c.kind == "coherence-scan") check(c.q == 1 || c.q == 2, "coherence-scan supports q = 1 or 2");
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw std::invalid_argument(text);
    const double a = to_real(parts[0]), b = to_real(parts[1]), h = to_real(parts[2]);
    if (!(h > 0.0) || b < a) throw std::invalid_argument(text);
    const auto n = static_cast<long>(std::floor((b - a) / h + 1e-9));
    for (long k = 0; k <= n; ++k) out.push_back(std::round((a + k * h) * 1e12) / 1e12);
    return out;
  }
  for (const auto& item : split(text, ',')) out.push_back(to_real(item));
  return out;
}

}  // namespace tgqsl::cli
