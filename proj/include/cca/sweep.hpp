#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cca/chain_params.hpp"
#include "cca/protocol_schedule.hpp"

namespace cca {

enum class SweepKind { FidelityVsN, TimingErrorSurface, DelayCurve, Threshold };

enum class ParamSet { Current, Projected, Custom };

const char* to_string(ParamSet p);
ParamSet param_set_from_string(const std::string& s);

struct DissipationRates {
  double gamma_over_g = 0.0;
  double kappa_over_g = 0.0;
};

// current:   gamma = 0.004 g, kappa = 0.006 g (realized microtoroid + Cs).
// projected: gamma = 1e-4 g, kappa = 1e-3 g — cooperativity g^2/(gamma kappa)
//            = 1e7 with the cavity improving ~40x and the atom (linewidth
//            fixed by the transition) ~6x relative to `current`.
DissipationRates rates_for(ParamSet set,
                           std::optional<DissipationRates> custom = {});

struct SweepSpec {
  SweepKind kind = SweepKind::FidelityVsN;
  std::vector<int> n_values;  // odd, ascending; q = (N+1)/2, s=1, r=N
  ParamSet param_set = ParamSet::Current;
  std::optional<DissipationRates> custom_rates;
  // FidelityVsN only: explicit (N, s, r) rows instead of end-to-end pairs.
  std::vector<std::array<int, 3>> explicit_pairs;
  std::vector<double> dt1_grid, dt2_grid;  // TimingErrorSurface, fractions
  std::vector<double> delay_grid;          // DelayCurve, in gt
  double threshold_value = 2.0 / 3.0;      // Threshold
  int n_search_min = 3, n_search_max = 301;
  bool measure_after_step1 = false;
  int workers = 1;

  void validate() const;  // throws std::invalid_argument
};

// One evaluated protocol point: full inputs plus outputs, so a record can be
// re-evaluated standalone and round-trips losslessly through CSV/JSON.
struct RunRecord {
  int n_cavities = 0;
  double hop_rate_over_g = 100.0;
  double gamma_over_g = 0.0;
  double kappa_s_over_g = 0.0;
  double kappa_r_over_g = 0.0;
  int sender = 0, receiver = 0, resonant_mode = 0;
  ModeDecayScaling mode_decay_scaling = ModeDecayScaling::Paper;
  double gt1 = 0.0, gt2 = 0.0, gt_delay = 0.0;
  double dt1_frac = 0.0, dt2_frac = 0.0;
  bool measured = false;
  double avg_fidelity = 0.0;
  double success_probability = 1.0;
  double wall_seconds = 0.0;  // in-memory only; not serialized by default

  ChainParams chain_params() const;
  ProtocolSchedule schedule() const;
};

// Re-runs the record's inputs and returns the average fidelity.
double evaluate_record(const RunRecord& record);

// One record per N at s=1, r=N (or per explicit pair), lossless-perfect
// schedule times.
std::vector<RunRecord> sweep_fidelity_vs_n(const SweepSpec& spec);

// Row-major grid over (dt1_grid x dt2_grid), repeated for each N.
std::vector<RunRecord> sweep_timing_error(const SweepSpec& spec);

// One record per (N, delay) pair, delays in grid order per N.
std::vector<RunRecord> sweep_delay(const SweepSpec& spec);

struct ThresholdResult {
  enum class Status { Found, NotFound, UnboundedWithinRange };
  Status status = Status::NotFound;
  int n_largest_passing = 0;     // valid when Found or UnboundedWithinRange
  double fidelity_at_n = 0.0;    // average fidelity at n_largest_passing
  std::vector<RunRecord> evaluations;  // memoized points, ascending N
};

// Largest odd N in [n_search_min, n_search_max] with avg fidelity >= the
// threshold. The even-q and odd-q chains interleave in a sawtooth, so the
// search bisects each parity class separately and takes the larger crossing.
ThresholdResult find_threshold_n(const SweepSpec& spec);

inline constexpr const char* kRecordFormatVersion = "cca-runrecord-v1";

// CSV: '#'-prefixed provenance header (format version + free-form origin
// line), one column-header row, then one record per row in a fixed column
// order. JSON mirrors the same fields. Doubles use round-trip precision so
// identical specs produce byte-identical files.
void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records,
                       const std::string& provenance,
                       bool include_timing = false);
void write_records_json(std::ostream& out,
                        const std::vector<RunRecord>& records,
                        const std::string& provenance,
                        bool include_timing = false);
std::vector<RunRecord> read_records_csv(std::istream& in);

}  // namespace cca
