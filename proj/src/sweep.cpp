#include "cca/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "cca/ideal_protocol.hpp"
#include "cca/mode_basis.hpp"
#include "cca/open_system.hpp"

namespace cca {

const char* to_string(ParamSet p) {
  switch (p) {
    case ParamSet::Current: return "current";
    case ParamSet::Projected: return "projected";
    case ParamSet::Custom: return "custom";
  }
  return "custom";
}

ParamSet param_set_from_string(const std::string& s) {
  if (s == "current") return ParamSet::Current;
  if (s == "projected") return ParamSet::Projected;
  if (s == "custom") return ParamSet::Custom;
  throw std::invalid_argument("unknown parameter set '" + s + "'");
}

DissipationRates rates_for(ParamSet set, std::optional<DissipationRates> custom) {
  switch (set) {
    case ParamSet::Current:
      return {0.004, 0.006};
    case ParamSet::Projected:
      return {1e-4, 1e-3};
    case ParamSet::Custom:
      if (!custom)
        throw std::invalid_argument("custom parameter set needs explicit rates");
      return *custom;
  }
  throw std::invalid_argument("unknown parameter set");
}

void SweepSpec::validate() const {
  auto check_odd_ascending = [](const std::vector<int>& ns) {
    if (ns.empty()) throw std::invalid_argument("n_values must not be empty");
    for (size_t i = 0; i < ns.size(); ++i) {
      if (ns[i] < 3 || ns[i] % 2 == 0)
        throw std::invalid_argument("sweep chain lengths must be odd and >= 3");
      if (i > 0 && ns[i] <= ns[i - 1])
        throw std::invalid_argument("n_values must be strictly ascending");
    }
  };
  auto check_sorted = [](const std::vector<double>& g, const char* name) {
    if (g.empty())
      throw std::invalid_argument(std::string(name) + " must not be empty");
    if (!std::is_sorted(g.begin(), g.end()))
      throw std::invalid_argument(std::string(name) + " must be sorted");
  };
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (param_set == ParamSet::Custom && !custom_rates)
    throw std::invalid_argument("custom parameter set needs explicit rates");
  switch (kind) {
    case SweepKind::FidelityVsN:
      if (explicit_pairs.empty()) check_odd_ascending(n_values);
      break;
    case SweepKind::TimingErrorSurface:
      check_odd_ascending(n_values);
      check_sorted(dt1_grid, "dt1_grid");
      check_sorted(dt2_grid, "dt2_grid");
      for (double d : dt1_grid)
        if (std::abs(d) > 0.10)
          throw std::invalid_argument("timing error grid limited to +-10%");
      for (double d : dt2_grid)
        if (std::abs(d) > 0.10)
          throw std::invalid_argument("timing error grid limited to +-10%");
      break;
    case SweepKind::DelayCurve:
      check_odd_ascending(n_values);
      check_sorted(delay_grid, "delay_grid");
      if (delay_grid.front() < 0)
        throw std::invalid_argument("delays must be >= 0");
      break;
    case SweepKind::Threshold:
      if (!(threshold_value > 0 && threshold_value < 1))
        throw std::invalid_argument("threshold must lie in (0, 1)");
      if (n_search_min < 3 || n_search_min > n_search_max)
        throw std::invalid_argument("bad threshold search range");
      break;
  }
}

ChainParams RunRecord::chain_params() const {
  ChainParams p;
  p.n_cavities = n_cavities;
  p.hop_rate_over_g = hop_rate_over_g;
  p.gamma_over_g = gamma_over_g;
  p.kappa_s_over_g = kappa_s_over_g;
  p.kappa_r_over_g = kappa_r_over_g;
  p.sender = sender;
  p.receiver = receiver;
  p.resonant_mode = resonant_mode;
  p.mode_decay_scaling = mode_decay_scaling;
  return p;
}

ProtocolSchedule RunRecord::schedule() const {
  ProtocolSchedule s;
  s.gt1 = gt1;
  s.gt2 = gt2;
  s.gt_delay = gt_delay;
  s.dt1_frac = dt1_frac;
  s.dt2_frac = dt2_frac;
  s.measure_after_step1 = measured;
  return s;
}

double evaluate_record(const RunRecord& record) {
  return average_fidelity(record.chain_params(), record.schedule());
}

namespace {

RunRecord make_record(const ChainParams& params, const ProtocolSchedule& sched) {
  RunRecord rec;
  rec.n_cavities = params.n_cavities;
  rec.hop_rate_over_g = params.hop_rate_over_g;
  rec.gamma_over_g = params.gamma_over_g;
  rec.kappa_s_over_g = params.kappa_s_over_g;
  rec.kappa_r_over_g = params.kappa_r_over_g;
  rec.sender = params.sender;
  rec.receiver = params.receiver;
  rec.resonant_mode = params.resonant_mode;
  rec.mode_decay_scaling = params.mode_decay_scaling;
  rec.gt1 = sched.gt1;
  rec.gt2 = sched.gt2;
  rec.gt_delay = sched.gt_delay;
  rec.dt1_frac = sched.dt1_frac;
  rec.dt2_frac = sched.dt2_frac;
  rec.measured = sched.measure_after_step1;

  const auto t0 = std::chrono::steady_clock::now();
  const auto avg = average_fidelity_detail(params, sched);
  rec.avg_fidelity = avg.avg_fidelity;
  rec.success_probability = avg.success_probability;
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rec;
}

// Deterministic parallel map: tasks pulled from an atomic counter, results
// stored by index so output order never depends on completion order.
template <class Fn>
std::vector<RunRecord> parallel_map(size_t count, int workers, const Fn& fn) {
  std::vector<RunRecord> out(count);
  if (workers <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min<size_t>(workers, count);
  pool.reserve(n_threads);
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

ChainParams transfer_params(const SweepSpec& spec, int n, int s, int r) {
  const auto rates = rates_for(spec.param_set, spec.custom_rates);
  ChainParams p = ChainParams::end_to_end(n, rates.gamma_over_g,
                                          rates.kappa_over_g);
  p.sender = s;
  p.receiver = r;
  return p;
}

ProtocolSchedule lossless_schedule(const ChainParams& p) {
  const ModeBasis basis(p.n_cavities);
  return perfect_schedule(basis, p.sender, p.receiver, p.resonant_mode);
}

}  // namespace

std::vector<RunRecord> sweep_fidelity_vs_n(const SweepSpec& spec) {
  spec.validate();
  std::vector<std::array<int, 3>> rows = spec.explicit_pairs;
  if (rows.empty()) {
    rows.reserve(spec.n_values.size());
    for (int n : spec.n_values) rows.push_back({n, 1, n});
  }
  return parallel_map(rows.size(), spec.workers, [&](size_t i) {
    const auto [n, s, r] = rows[i];
    ChainParams p = transfer_params(spec, n, s, r);
    ProtocolSchedule sched = lossless_schedule(p);
    sched.measure_after_step1 = spec.measure_after_step1;
    return make_record(p, sched);
  });
}

std::vector<RunRecord> sweep_timing_error(const SweepSpec& spec) {
  spec.validate();
  const size_t per_n = spec.dt1_grid.size() * spec.dt2_grid.size();
  return parallel_map(
      spec.n_values.size() * per_n, spec.workers, [&](size_t idx) {
        const int n = spec.n_values[idx / per_n];
        const size_t cell = idx % per_n;
        ChainParams p = transfer_params(spec, n, 1, n);
        ProtocolSchedule sched = lossless_schedule(p);
        sched.dt1_frac = spec.dt1_grid[cell / spec.dt2_grid.size()];
        sched.dt2_frac = spec.dt2_grid[cell % spec.dt2_grid.size()];
        sched.measure_after_step1 = spec.measure_after_step1;
        return make_record(p, sched);
      });
}

std::vector<RunRecord> sweep_delay(const SweepSpec& spec) {
  spec.validate();
  const size_t per_n = spec.delay_grid.size();
  return parallel_map(
      spec.n_values.size() * per_n, spec.workers, [&](size_t idx) {
        const int n = spec.n_values[idx / per_n];
        ChainParams p = transfer_params(spec, n, 1, n);
        ProtocolSchedule sched = lossless_schedule(p);
        sched.gt_delay = spec.delay_grid[idx % per_n];
        sched.measure_after_step1 = spec.measure_after_step1;
        return make_record(p, sched);
      });
}

ThresholdResult find_threshold_n(const SweepSpec& spec) {
  spec.validate();
  std::map<int, RunRecord> memo;
  auto fidelity_at = [&](int n) {
    auto it = memo.find(n);
    if (it == memo.end()) {
      ChainParams p = transfer_params(spec, n, 1, n);
      it = memo.emplace(n, make_record(p, lossless_schedule(p))).first;
    }
    return it->second.avg_fidelity;
  };

  // Split odd N by the parity of q=(N+1)/2: each class decays monotonically
  // with N, the two interleave in a sawtooth.
  std::vector<int> classes[2];
  const int first_odd = spec.n_search_min + (spec.n_search_min % 2 == 0);
  for (int n = std::max(3, first_odd); n <= spec.n_search_max; n += 2)
    classes[((n + 1) / 2) % 2].push_back(n);

  ThresholdResult result;
  bool any_unbounded = false;
  int best = 0;
  for (const auto& ns : classes) {
    if (ns.empty()) continue;
    if (fidelity_at(ns.front()) < spec.threshold_value) continue;
    if (fidelity_at(ns.back()) >= spec.threshold_value) {
      any_unbounded = true;
      best = std::max(best, ns.back());
      continue;
    }
    size_t lo = 0, hi = ns.size() - 1;  // lo passes, hi fails
    while (hi - lo > 1) {
      const size_t mid = (lo + hi) / 2;
      (fidelity_at(ns[mid]) >= spec.threshold_value ? lo : hi) = mid;
    }
    best = std::max(best, ns[lo]);
  }

  for (auto& [n, rec] : memo) result.evaluations.push_back(rec);
  if (best == 0) {
    result.status = ThresholdResult::Status::NotFound;
    return result;
  }
  result.status = any_unbounded
                      ? ThresholdResult::Status::UnboundedWithinRange
                      : ThresholdResult::Status::Found;
  result.n_largest_passing = best;
  result.fidelity_at_n = fidelity_at(best);
  return result;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

double parse_double(const std::string& s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad numeric field '" + s + "'");
  return v;
}

constexpr const char* kCsvColumns =
    "n_cavities,hop_rate_over_g,gamma_over_g,kappa_s_over_g,kappa_r_over_g,"
    "sender,receiver,resonant_mode,mode_decay_scaling,gt1,gt2,gt_delay,"
    "dt1_frac,dt2_frac,measured,avg_fidelity,success_probability";

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records,
                       const std::string& provenance, bool include_timing) {
  out << "# " << kRecordFormatVersion << "\n";
  if (!provenance.empty()) out << "# " << provenance << "\n";
  out << kCsvColumns;
  if (include_timing) out << ",wall_seconds";
  out << "\n";
  for (const auto& r : records) {
    out << r.n_cavities << ',' << format_double(r.hop_rate_over_g) << ','
        << format_double(r.gamma_over_g) << ','
        << format_double(r.kappa_s_over_g) << ','
        << format_double(r.kappa_r_over_g) << ',' << r.sender << ','
        << r.receiver << ',' << r.resonant_mode << ','
        << to_string(r.mode_decay_scaling) << ',' << format_double(r.gt1)
        << ',' << format_double(r.gt2) << ',' << format_double(r.gt_delay)
        << ',' << format_double(r.dt1_frac) << ','
        << format_double(r.dt2_frac) << ',' << (r.measured ? 1 : 0) << ','
        << format_double(r.avg_fidelity) << ','
        << format_double(r.success_probability);
    if (include_timing) out << ',' << format_double(r.wall_seconds);
    out << "\n";
  }
}

void write_records_json(std::ostream& out,
                        const std::vector<RunRecord>& records,
                        const std::string& provenance, bool include_timing) {
  nlohmann::json doc;
  doc["format"] = kRecordFormatVersion;
  doc["provenance"] = provenance;
  doc["records"] = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j;
    j["n_cavities"] = r.n_cavities;
    j["hop_rate_over_g"] = r.hop_rate_over_g;
    j["gamma_over_g"] = r.gamma_over_g;
    j["kappa_s_over_g"] = r.kappa_s_over_g;
    j["kappa_r_over_g"] = r.kappa_r_over_g;
    j["sender"] = r.sender;
    j["receiver"] = r.receiver;
    j["resonant_mode"] = r.resonant_mode;
    j["mode_decay_scaling"] = to_string(r.mode_decay_scaling);
    j["gt1"] = r.gt1;
    j["gt2"] = r.gt2;
    j["gt_delay"] = r.gt_delay;
    j["dt1_frac"] = r.dt1_frac;
    j["dt2_frac"] = r.dt2_frac;
    j["measured"] = r.measured;
    j["avg_fidelity"] = r.avg_fidelity;
    j["success_probability"] = r.success_probability;
    if (include_timing) j["wall_seconds"] = r.wall_seconds;
    doc["records"].push_back(std::move(j));
  }
  out << doc.dump(2) << "\n";
}

std::vector<RunRecord> read_records_csv(std::istream& in) {
  std::vector<RunRecord> records;
  std::string line;
  bool header_seen = false;
  bool has_timing = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line.rfind(kCsvColumns, 0) != 0)
        throw std::invalid_argument("unexpected CSV column header");
      has_timing = line.find(",wall_seconds") != std::string::npos;
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    const size_t expected = has_timing ? 18 : 17;
    if (fields.size() != expected)
      throw std::invalid_argument("bad CSV row: '" + line + "'");
    RunRecord r;
    r.n_cavities = std::stoi(fields[0]);
    r.hop_rate_over_g = parse_double(fields[1]);
    r.gamma_over_g = parse_double(fields[2]);
    r.kappa_s_over_g = parse_double(fields[3]);
    r.kappa_r_over_g = parse_double(fields[4]);
    r.sender = std::stoi(fields[5]);
    r.receiver = std::stoi(fields[6]);
    r.resonant_mode = std::stoi(fields[7]);
    r.mode_decay_scaling = mode_decay_scaling_from_string(fields[8]);
    r.gt1 = parse_double(fields[9]);
    r.gt2 = parse_double(fields[10]);
    r.gt_delay = parse_double(fields[11]);
    r.dt1_frac = parse_double(fields[12]);
    r.dt2_frac = parse_double(fields[13]);
    r.measured = fields[14] == "1";
    r.avg_fidelity = parse_double(fields[15]);
    r.success_probability = parse_double(fields[16]);
    if (has_timing) r.wall_seconds = parse_double(fields[17]);
    records.push_back(r);
  }
  return records;
}

}  // namespace cca
