#pragma once

#include <array>
#include <string>
#include <vector>

#include "cca/sweep.hpp"

namespace cca {

// Named reproduction targets. ScheduleTable presets enumerate closed-form
// (N, s, r) schedule rows; Sweep presets carry a ready-to-run SweepSpec.
struct Preset {
  enum class Kind { ScheduleTable, Sweep };
  std::string name;
  std::string description;
  Kind kind = Kind::Sweep;
  SweepSpec spec;                             // Kind::Sweep
  std::vector<std::array<int, 3>> rows;       // Kind::ScheduleTable
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

}  // namespace cca
