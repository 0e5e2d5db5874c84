#include "cca/open_system.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cca/detail/gauss_legendre.hpp"
#include "cca/detail/ode.hpp"
#include "cca/ideal_protocol.hpp"
#include "cca/mode_basis.hpp"

namespace cca {

namespace {

using Eigen::Matrix4cd;
using Eigen::Vector4cd;

// Basis indices (see DensityMatrix): 0 vacuum, 1 sender excited,
// 2 receiver excited, 3 photon in the resonant mode.
constexpr int kVac = 0, kSender = 1, kReceiver = 2, kPhoton = 3;

struct StageGenerator {
  double coupling = 0.0;  // S(site,q), into (excited_index <-> photon) block
  int excited_index = kSender;
  double mode_rate = 0.0;      // leakage coefficient for b_q
  double sender_rate = 0.0;    // kappa_s channel
  double receiver_rate = 0.0;  // kappa_r channel, Step2 only
};

StageGenerator make_generator(const ChainParams& params, Stage stage,
                              double coupling_s, double coupling_r) {
  StageGenerator gen;
  gen.mode_rate = params.mode_decay_scaling == ModeDecayScaling::Paper
                      ? params.n_cavities * params.gamma_over_g
                      : params.gamma_over_g;
  gen.sender_rate = params.kappa_s_over_g;
  switch (stage) {
    case Stage::Step1:
      gen.coupling = coupling_s;
      gen.excited_index = kSender;
      break;
    case Stage::Delay:
      break;
    case Stage::Step2:
      gen.coupling = coupling_r;
      gen.excited_index = kReceiver;
      gen.receiver_rate = params.kappa_r_over_g;
      break;
  }
  return gen;
}

// D_j(rho) for the lowering operator |vac><j| at rate c:
// c (rho_jj |vac><vac| - {|j><j|, rho}/2).
void add_decay(Matrix4cd& d, const Matrix4cd& rho, int j, double c) {
  if (c == 0.0) return;
  d(kVac, kVac) += c * rho(j, j);
  d.row(j) -= (0.5 * c) * rho.row(j);
  d.col(j) -= (0.5 * c) * rho.col(j);
}

void apply_rhs(const StageGenerator& gen, const Matrix4cd& rho, Matrix4cd& d) {
  d.setZero();
  if (gen.coupling != 0.0) {
    // H = coupling (|x><photon| + |photon><x|), x = the active atom level
    const int x = gen.excited_index;
    const std::complex<double> mi{0.0, -1.0};
    // -i (H rho - rho H), written out over the two nonzero entries of H
    d.row(x) += mi * gen.coupling * rho.row(kPhoton);
    d.row(kPhoton) += mi * gen.coupling * rho.row(x);
    d.col(x) -= mi * gen.coupling * rho.col(kPhoton);
    d.col(kPhoton) -= mi * gen.coupling * rho.col(x);
  }
  add_decay(d, rho, kPhoton, gen.mode_rate);
  add_decay(d, rho, kSender, gen.sender_rate);
  add_decay(d, rho, kReceiver, gen.receiver_rate);
}

Vector4cd target_state(const BlochState& in) {
  Vector4cd psi = Vector4cd::Zero();
  psi(kVac) = in.ground_amp();
  psi(kReceiver) = in.excited_amp();
  return psi;
}

Vector4cd initial_state(const BlochState& in) {
  Vector4cd psi = Vector4cd::Zero();
  psi(kVac) = in.ground_amp();
  psi(kSender) = in.excited_amp();
  return psi;
}

struct StagePlan {
  Stage stage;
  double duration;
};

class ProtocolIntegrator {
 public:
  ProtocolIntegrator(const ChainParams& params, const RunOptions& options)
      : params_(params), options_(options) {
    const ModeBasis basis(params.n_cavities);
    coupling_s_ = basis.amplitude(params.sender, params.resonant_mode);
    coupling_r_ = basis.amplitude(params.receiver, params.resonant_mode);
  }

  void evolve(Matrix4cd& rho, Stage stage, double duration, double t_offset,
              const Vector4cd& target, std::vector<TrajectorySample>* timeline) {
    if (duration <= 0) return;
    const auto gen = make_generator(params_, stage, coupling_s_, coupling_r_);
    const int segments =
        (timeline != nullptr && options_.timeline_samples > 0)
            ? options_.timeline_samples
            : 1;
    detail::CVec y(16);
    Eigen::Map<Matrix4cd>(y.data()) = rho;
    auto rhs = [&gen](const detail::CVec& x, detail::CVec& dxdt, double) {
      Eigen::Map<const Matrix4cd> rho_map(x.data());
      Eigen::Map<Matrix4cd> d_map(dxdt.data());
      Matrix4cd d;
      apply_rhs(gen, rho_map, d);
      d_map = d;
    };
    for (int seg = 0; seg < segments; ++seg) {
      const double t0 = duration * seg / segments;
      const double t1 = duration * (seg + 1) / segments;
      detail::integrate_adaptive_checked(rhs, y, t0, t1, options_.abs_tol,
                                         options_.rel_tol,
                                         std::min(t1 - t0, 0.05));
      Eigen::Map<const Matrix4cd> rho_map(y.data());
      DensityMatrix probe;
      probe.rho = rho_map;
      probe.check_physical();
      if (timeline != nullptr && options_.timeline_samples > 0)
        timeline->push_back(sample(t_offset + t1, rho_map, target));
    }
    rho = Eigen::Map<const Matrix4cd>(y.data());
  }

  static TrajectorySample sample(double gt, const Matrix4cd& rho,
                                 const Vector4cd& target) {
    TrajectorySample s;
    s.gt = gt;
    s.p_sender_excited = rho(kSender, kSender).real();
    s.p_receiver_excited = rho(kReceiver, kReceiver).real();
    s.p_photon = rho(kPhoton, kPhoton).real();
    s.p_vacuum = rho(kVac, kVac).real();
    s.inst_fidelity = (target.adjoint() * rho * target)(0, 0).real();
    return s;
  }

 private:
  ChainParams params_;
  RunOptions options_;
  double coupling_s_ = 0.0;
  double coupling_r_ = 0.0;
};

}  // namespace

Matrix4cd lindblad_rhs(const ChainParams& params, Stage stage,
                       const Matrix4cd& rho) {
  params.validate(false);
  const ModeBasis basis(params.n_cavities);
  const auto gen =
      make_generator(params, stage,
                     basis.amplitude(params.sender, params.resonant_mode),
                     basis.amplitude(params.receiver, params.resonant_mode));
  Matrix4cd d;
  apply_rhs(gen, rho, d);
  return d;
}

DissipativeRunResult run_protocol(const ChainParams& params,
                                  const ProtocolSchedule& schedule,
                                  const BlochState& initial,
                                  const RunOptions& options) {
  params.validate(true);
  schedule.validate();
  const double gt1 = schedule.effective_gt1();
  const double gt2 = schedule.effective_gt2();
  if (gt1 < 0 || gt2 < 0)
    throw std::invalid_argument("effective durations must be >= 0");

  ProtocolIntegrator integrator(params, options);
  const Vector4cd target = target_state(initial);

  DissipativeRunResult result;
  Matrix4cd rho = DensityMatrix::pure(initial_state(initial)).rho;
  if (options.timeline_samples > 0)
    result.timeline.push_back(ProtocolIntegrator::sample(0.0, rho, target));

  integrator.evolve(rho, Stage::Step1, gt1, 0.0, target, &result.timeline);

  if (schedule.measure_after_step1) {
    // Keep the |g_s> branch: drop the sender-excited row and column.
    Matrix4cd projected = rho;
    projected.row(kSender).setZero();
    projected.col(kSender).setZero();
    const double weight = projected.trace().real();
    if (weight <= 0)
      throw std::runtime_error("measurement branch has vanishing probability");
    result.success_probability = weight;
    rho = projected / weight;
  }

  integrator.evolve(rho, Stage::Delay, schedule.gt_delay, gt1, target,
                    &result.timeline);
  integrator.evolve(rho, Stage::Step2, gt2, gt1 + schedule.gt_delay, target,
                    &result.timeline);

  result.rho_final.rho = rho;
  result.rho_final.check_physical();
  result.fidelity = (target.adjoint() * rho * target)(0, 0).real();
  return result;
}

AverageResult average_fidelity_detail(const ChainParams& params,
                                      const ProtocolSchedule& schedule,
                                      const RunOptions& options) {
  AverageResult out;
  if (!schedule.measure_after_step1) {
    // The transfer fidelity is quadratic in the Bloch vector of the input, so
    // the octahedron average is the exact sphere average.
    double acc = 0.0;
    for (const auto& state : six_axis_states())
      acc += run_protocol(params, schedule, state, options).fidelity;
    out.avg_fidelity = acc / 6.0;
    out.success_probability = 1.0;
    return out;
  }

  // Conditional fidelity is a ratio of branch quantities and no longer
  // polynomial in the input, so average by quadrature: Gauss-Legendre in
  // cos(theta), uniform in phi.
  const auto rule = detail::gauss_legendre(21);
  constexpr int n_phi = 8;
  double f_acc = 0.0, p_acc = 0.0;
  for (int i = 0; i < static_cast<int>(rule.nodes.size()); ++i) {
    const double theta = std::acos(rule.nodes[i]);
    double f_phi = 0.0, p_phi = 0.0;
    for (int j = 0; j < n_phi; ++j) {
      const BlochState state{theta, 2.0 * std::numbers::pi * j / n_phi};
      const auto run = run_protocol(params, schedule, state, options);
      f_phi += run.fidelity;
      p_phi += run.success_probability;
    }
    f_acc += rule.weights[i] * f_phi / n_phi;
    p_acc += rule.weights[i] * p_phi / n_phi;
  }
  out.avg_fidelity = f_acc / 2.0;
  out.success_probability = p_acc / 2.0;
  return out;
}

double average_fidelity(const ChainParams& params,
                        const ProtocolSchedule& schedule) {
  return average_fidelity_detail(params, schedule).avg_fidelity;
}

namespace {

template <class F>
std::pair<double, double> golden_max(const F& f, double lo, double hi,
                                     double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace

std::pair<ProtocolSchedule, double> max_average_fidelity(
    const ChainParams& params, const SearchWindow& window) {
  params.validate(true);
  const ModeBasis basis(params.n_cavities);
  const ProtocolSchedule ideal = perfect_schedule(
      basis, params.sender, params.receiver, params.resonant_mode);
  if (!(window.gt1_lo < ideal.gt1 && ideal.gt1 < window.gt1_hi &&
        window.gt2_lo < ideal.gt2 && ideal.gt2 < window.gt2_hi))
    throw std::invalid_argument(
        "search window does not bracket the lossless schedule");

  ProtocolSchedule best = ideal;
  double value = 0.0;
  for (int round = 0; round < 3; ++round) {
    auto [t1, v1] = golden_max(
        [&](double gt1) {
          ProtocolSchedule s = best;
          s.gt1 = gt1;
          return average_fidelity(params, s);
        },
        window.gt1_lo, window.gt1_hi, window.tol);
    best.gt1 = t1;
    auto [t2, v2] = golden_max(
        [&](double gt2) {
          ProtocolSchedule s = best;
          s.gt2 = gt2;
          return average_fidelity(params, s);
        },
        window.gt2_lo, window.gt2_hi, window.tol);
    best.gt2 = t2;
    value = v2;
  }

  if (std::abs(best.gt1 - ideal.gt1) > 0.02 * ideal.gt1 ||
      std::abs(best.gt2 - ideal.gt2) > 0.02 * ideal.gt2) {
    std::ostringstream msg;
    msg << "optimal schedule (" << best.gt1 << ", " << best.gt2
        << ") strayed more than 2% from the lossless times (" << ideal.gt1
        << ", " << ideal.gt2 << ")";
    throw std::runtime_error(msg.str());
  }
  return {best, value};
}

std::pair<ProtocolSchedule, double> max_average_fidelity(
    const ChainParams& params) {
  const ModeBasis basis(params.n_cavities);
  const ProtocolSchedule ideal = perfect_schedule(
      basis, params.sender, params.receiver, params.resonant_mode);
  SearchWindow window;
  window.gt1_lo = 0.9 * ideal.gt1;
  window.gt1_hi = 1.1 * ideal.gt1;
  window.gt2_lo = 0.9 * ideal.gt2;
  window.gt2_hi = 1.1 * ideal.gt2;
  return max_average_fidelity(params, window);
}

void write_trajectory_csv(std::ostream& out,
                          const std::vector<TrajectorySample>& timeline) {
  out << "gt,p_sender_excited,p_receiver_excited,p_photon,p_vacuum,inst_fidelity\n";
  char buf[256];
  for (const auto& s : timeline) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  s.gt, s.p_sender_excited, s.p_receiver_excited, s.p_photon,
                  s.p_vacuum, s.inst_fidelity);
    out << buf;
  }
}

}  // namespace cca
