#include "cca/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cca {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

double parse_double(const std::string& key, const std::string& s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("config key '" + key + "': bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("config key '" + key + "': bad integer '" + s + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("config key '" + key + "': bad bool '" + s + "'");
}

}  // namespace

void RunConfig::validate() const {
  if (n_cavities < 2) throw std::invalid_argument("n must be >= 2");
  if (resonant_mode == 0 && n_cavities % 2 == 0)
    throw std::invalid_argument("even n needs an explicit resonant mode q");
  const int q = resonant_mode == 0 ? (n_cavities + 1) / 2 : resonant_mode;
  if (q < 1 || q > n_cavities)
    throw std::invalid_argument("resonant mode out of range");
  if (sender < 1 || sender > n_cavities || receiver < 1 ||
      receiver > n_cavities)
    throw std::invalid_argument("sender/receiver out of range");
  if (!(hop_ratio > 0)) throw std::invalid_argument("hop_ratio must be > 0");
  if (gamma < 0 || kappa < 0)
    throw std::invalid_argument("rates must be >= 0");
  if (delay < 0) throw std::invalid_argument("delay must be >= 0");
  if (std::abs(dt1) >= 1 || std::abs(dt2) >= 1)
    throw std::invalid_argument("|dt| must be < 1");
  if (mode_decay != "paper" && mode_decay != "uniform")
    throw std::invalid_argument("mode_decay must be paper|uniform");
  if (param_set != "current" && param_set != "projected" &&
      param_set != "custom")
    throw std::invalid_argument("param_set must be current|projected|custom");
  if (!(threshold > 0 && threshold < 1))
    throw std::invalid_argument("threshold must lie in (0, 1)");
  if (n_max < 3) throw std::invalid_argument("n_max must be >= 3");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (format != "csv" && format != "json")
    throw std::invalid_argument("format must be csv|json");
}

ChainParams RunConfig::chain_params() const {
  validate();
  ChainParams p;
  p.n_cavities = n_cavities;
  p.hop_rate_over_g = hop_ratio;
  p.sender = sender;
  p.receiver = receiver;
  p.resonant_mode = resonant_mode == 0 ? (n_cavities + 1) / 2 : resonant_mode;
  if (lossless) {
    p.gamma_over_g = 0;
    p.kappa_s_over_g = 0;
    p.kappa_r_over_g = 0;
  } else {
    auto r = rates_for(param_set_from_string(param_set),
                       DissipationRates{gamma, kappa});
    p.gamma_over_g = r.gamma_over_g;
    p.kappa_s_over_g = r.kappa_over_g;
    p.kappa_r_over_g = r.kappa_over_g;
  }
  p.mode_decay_scaling = mode_decay_scaling_from_string(mode_decay);
  // delta = -beta_q keeps the atom on resonance with mode q.
  const double beta_q =
      2.0 * std::cos(std::numbers::pi * p.resonant_mode / (n_cavities + 1));
  p.detuning_over_g =
      std::abs(beta_q) < 1e-14 ? 0.0 : -hop_ratio * beta_q;
  return p;
}

void RunConfig::dump(std::ostream& os) const {
  os << "n=" << n_cavities << "\n";
  os << "sender=" << sender << "\n";
  os << "receiver=" << receiver << "\n";
  os << "mode=" << resonant_mode << "\n";
  os << "hop_ratio=" << format_double(hop_ratio) << "\n";
  os << "gamma=" << format_double(gamma) << "\n";
  os << "kappa=" << format_double(kappa) << "\n";
  os << "lossless=" << (lossless ? "true" : "false") << "\n";
  os << "delay=" << format_double(delay) << "\n";
  os << "dt1=" << format_double(dt1) << "\n";
  os << "dt2=" << format_double(dt2) << "\n";
  os << "measure=" << (measure ? "true" : "false") << "\n";
  os << "mode_decay=" << mode_decay << "\n";
  os << "param_set=" << param_set << "\n";
  os << "threshold=" << format_double(threshold) << "\n";
  os << "n_max=" << n_max << "\n";
  os << "preset=" << preset << "\n";
  os << "workers=" << workers << "\n";
  os << "out=" << out << "\n";
  os << "format=" << format << "\n";
}

RunConfig RunConfig::load(std::istream& in) {
  RunConfig cfg;
  const std::map<std::string, std::function<void(const std::string&)>>
      setters = {
          {"n", [&](const std::string& v) { cfg.n_cavities = parse_int("n", v); }},
          {"sender", [&](const std::string& v) { cfg.sender = parse_int("sender", v); }},
          {"receiver", [&](const std::string& v) { cfg.receiver = parse_int("receiver", v); }},
          {"mode", [&](const std::string& v) { cfg.resonant_mode = parse_int("mode", v); }},
          {"hop_ratio", [&](const std::string& v) { cfg.hop_ratio = parse_double("hop_ratio", v); }},
          {"gamma", [&](const std::string& v) { cfg.gamma = parse_double("gamma", v); }},
          {"kappa", [&](const std::string& v) { cfg.kappa = parse_double("kappa", v); }},
          {"lossless", [&](const std::string& v) { cfg.lossless = parse_bool("lossless", v); }},
          {"delay", [&](const std::string& v) { cfg.delay = parse_double("delay", v); }},
          {"dt1", [&](const std::string& v) { cfg.dt1 = parse_double("dt1", v); }},
          {"dt2", [&](const std::string& v) { cfg.dt2 = parse_double("dt2", v); }},
          {"measure", [&](const std::string& v) { cfg.measure = parse_bool("measure", v); }},
          {"mode_decay", [&](const std::string& v) { cfg.mode_decay = v; }},
          {"param_set", [&](const std::string& v) { cfg.param_set = v; }},
          {"threshold", [&](const std::string& v) { cfg.threshold = parse_double("threshold", v); }},
          {"n_max", [&](const std::string& v) { cfg.n_max = parse_int("n_max", v); }},
          {"preset", [&](const std::string& v) { cfg.preset = v; }},
          {"workers", [&](const std::string& v) { cfg.workers = parse_int("workers", v); }},
          {"out", [&](const std::string& v) { cfg.out = v; }},
          {"format", [&](const std::string& v) { cfg.format = v; }},
      };
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    it->second(value);
  }
  return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  return load(in);
}

}  // namespace cca
