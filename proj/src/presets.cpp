#include "cca/presets.hpp"

namespace cca {

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i)
    v[i] = lo + (hi - lo) * i / (count - 1);
  return v;
}

std::vector<int> odd_range(int lo, int hi) {
  std::vector<int> v;
  for (int n = lo; n <= hi; n += 2) v.push_back(n);
  return v;
}

// The ten transfer pairs with closed-form schedules for N = 3, 5, 7.
const std::vector<std::array<int, 3>> kReferencePairs = {
    {3, 1, 3}, {5, 1, 3}, {5, 1, 5}, {5, 3, 5}, {7, 1, 3},
    {7, 1, 5}, {7, 1, 7}, {7, 3, 5}, {7, 3, 7}, {7, 5, 7}};

std::vector<Preset> build_presets() {
  std::vector<Preset> out;

  {
    Preset p;
    p.name = "table1";
    p.description =
        "perfect-transfer interaction times (gt1, gt2) for the N=3,5,7 pairs";
    p.kind = Preset::Kind::ScheduleTable;
    p.rows = kReferencePairs;
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "table2";
    p.description =
        "dissipative average fidelity for the N=3,5,7 pairs, current rates";
    p.spec.kind = SweepKind::FidelityVsN;
    p.spec.explicit_pairs = kReferencePairs;
    p.spec.param_set = ParamSet::Current;
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig2-current";
    p.description =
        "end-to-end average fidelity vs odd N, current rates (gamma=0.004g, "
        "kappa=0.006g)";
    p.spec.kind = SweepKind::FidelityVsN;
    p.spec.n_values = odd_range(3, 61);
    p.spec.param_set = ParamSet::Current;
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig2-projected";
    p.description =
        "end-to-end average fidelity vs odd N, projected strong-coupling "
        "rates (cooperativity 1e7)";
    p.spec.kind = SweepKind::FidelityVsN;
    p.spec.n_values = odd_range(3, 201);
    p.spec.param_set = ParamSet::Projected;
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig3";
    p.description =
        "average fidelity over a +-2% interaction-time error grid, "
        "N=5,7,9,11, current rates";
    p.spec.kind = SweepKind::TimingErrorSurface;
    p.spec.n_values = {5, 7, 9, 11};
    p.spec.dt1_grid = linspace(-0.02, 0.02, 9);
    p.spec.dt2_grid = linspace(-0.02, 0.02, 9);
    p.spec.param_set = ParamSet::Current;
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig4";
    p.description =
        "average fidelity vs inter-step delay, N=5,7,9,11, current rates";
    p.spec.kind = SweepKind::DelayCurve;
    p.spec.n_values = {5, 7, 9, 11};
    p.spec.delay_grid = linspace(0.0, 10.0, 41);
    p.spec.param_set = ParamSet::Current;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build_presets();
  return all;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace cca
