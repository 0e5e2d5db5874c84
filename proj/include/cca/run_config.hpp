#pragma once

#include <iosfwd>
#include <string>

#include "cca/chain_params.hpp"
#include "cca/sweep.hpp"

namespace cca {

// Flat key=value configuration mirroring the CLI flags. Unknown keys are
// rejected; dump() followed by load() reproduces an identical config.
struct RunConfig {
  int n_cavities = 3;
  int sender = 1;
  int receiver = 3;
  int resonant_mode = 0;  // 0 = derive (N+1)/2 for odd N
  double hop_ratio = 100.0;
  double gamma = 0.004;
  double kappa = 0.006;
  bool lossless = false;
  double delay = 0.0;
  double dt1 = 0.0;
  double dt2 = 0.0;
  bool measure = false;
  std::string mode_decay = "paper";  // paper | uniform
  std::string param_set = "custom";  // current | projected | custom
  double threshold = 2.0 / 3.0;
  int n_max = 301;
  std::string preset;
  int workers = 1;
  std::string out;
  std::string format = "csv";  // csv | json

  void validate() const;  // throws std::invalid_argument

  ChainParams chain_params() const;  // resolved q, rates, decay scaling

  void dump(std::ostream& out) const;
  static RunConfig load(std::istream& in);        // throws on unknown keys
  static RunConfig load_file(const std::string& path);
};

}  // namespace cca
