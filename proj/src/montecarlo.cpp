#include "iccr/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace iccr {

namespace {

double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  size_t idx = static_cast<size_t>(std::ceil(q * v.size()));
  return v[std::min(v.size() - 1, idx == 0 ? 0 : idx - 1)];
}

struct TrialOutcome {
  Transcript transcript;
  EquationSystem sys_a, sys_b;
  DecodeReport rep_a, rep_b;
  bool degenerate = false;
  bool filtered = false;
  bool decodable = false;
};

TrialOutcome run_trial(const SchemePlan& plan, const TrialBatchSpec& spec, int index) {
  RandomSource rng(spec.base_seed + static_cast<std::uint64_t>(index));
  ChannelSequence chan = sample_channel(plan.config, plan.frame_length, rng);
  ComplexVector sa = rng.gaussian_vector(plan.symbols_per_user);
  ComplexVector sb = rng.gaussian_vector(plan.symbols_per_user);
  TrialOutcome out;
  out.transcript = run_scheme(plan, chan, sa, sb, rng, spec.noise);
  out.sys_a = eliminate_known_interference(out.transcript, UserId::A);
  out.sys_b = eliminate_known_interference(out.transcript, UserId::B);
  if (out.sys_a.degenerate || out.sys_b.degenerate) {
    out.degenerate = true;
    return out;
  }
  out.rep_a = decode(out.sys_a, out.transcript);
  out.rep_b = decode(out.sys_b, out.transcript);
  double cond = std::max(out.rep_a.condition_number, out.rep_b.condition_number);
  if (!(cond <= kConditionFilter)) {
    out.filtered = true;
    return out;
  }
  out.decodable = out.rep_a.decodable && out.rep_b.decodable;
  return out;
}

}  // namespace

BatchStats run_batch(const TrialBatchSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be positive");
  SchemePlan plan = build_scheme(spec.config, spec.mode);
  BatchStats st;
  st.config = spec.config;
  st.mode = spec.mode;
  st.condition = plan.condition;
  st.frame_length = plan.frame_length;
  st.symbols_per_user = plan.symbols_per_user;
  st.trials = spec.trials;

  std::vector<double> conds, errors;
  for (int i = 0; i < spec.trials; ++i) {
    TrialOutcome out = run_trial(plan, spec, i);
    if (out.degenerate) {
      ++st.degenerate_count;
      continue;
    }
    conds.push_back(std::max(out.rep_a.condition_number, out.rep_b.condition_number));
    if (out.filtered) {
      ++st.filtered_count;
      continue;
    }
    if (out.decodable) {
      ++st.decodable_count;
      errors.push_back(std::max(out.rep_a.max_symbol_error, out.rep_b.max_symbol_error));
    }
    st.max_cancellation_residual =
        std::max({st.max_cancellation_residual, out.rep_a.cancellation_residual,
                  out.rep_b.cancellation_residual});
  }
  int judged = st.trials - st.filtered_count - st.degenerate_count;
  st.decodable_fraction = judged > 0 ? double(st.decodable_count) / judged : 0.0;
  st.filtered_fraction = double(st.filtered_count) / st.trials;
  st.median_condition_number = percentile(conds, 0.5);
  st.max_symbol_error_p99 = percentile(errors, 0.99);
  return st;
}

namespace {

// log2 det(I + p * Gᴴ Σ⁻¹ G), the rate of a linear system with effective
// matrix G at symbol power p under noise covariance sigma
double rate_bits(const ComplexMatrix& g, const ComplexMatrix& sigma, double p) {
  const int s = static_cast<int>(g.cols());
  if (s == 0 || g.rows() == 0) return 0.0;
  ComplexMatrix sym = 0.5 * (sigma + sigma.adjoint());
  Eigen::LDLT<ComplexMatrix> ldlt(sym);
  ComplexMatrix a = ComplexMatrix::Identity(s, s) + p * (g.adjoint() * ldlt.solve(g));
  a = 0.5 * (a + a.adjoint());
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  return lu.matrixLU().diagonal().array().abs().log().sum() / std::log(2.0);
}

}  // namespace

SweepResult estimate_dof_sweep(const TrialBatchSpec& spec, std::vector<double> snr_db) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be positive");
  if (snr_db.empty()) snr_db = {30.0, 40.0, 50.0, 60.0};
  std::sort(snr_db.begin(), snr_db.end());
  snr_db.erase(std::unique(snr_db.begin(), snr_db.end()), snr_db.end());

  SchemePlan plan = build_scheme(spec.config, spec.mode);
  SweepResult res;
  res.config = spec.config;
  res.mode = spec.mode;
  res.frame_length = plan.frame_length;
  res.symbols_per_user = plan.symbols_per_user;
  res.exact_sum_dof = Rational(2 * plan.symbols_per_user, plan.frame_length);

  const size_t n_snr = snr_db.size();
  std::vector<double> powers(n_snr);
  for (size_t k = 0; k < n_snr; ++k) powers[k] = std::pow(10.0, snr_db[k] / 10.0);

  // channel draws are noiseless; the noise enters through the analytic
  // covariance of each receiver's eliminated system
  TrialBatchSpec unit = spec;
  unit.noise = NoiseSpec{};
  std::vector<std::vector<double>> rates(n_snr);
  for (int i = 0; i < spec.trials; ++i) {
    TrialOutcome out = run_trial(plan, unit, i);
    if (out.degenerate || out.filtered || !out.decodable) {
      ++res.trials_excluded;
      continue;
    }
    ++res.trials_used;
    for (const EquationSystem* sys : {&out.sys_a, &out.sys_b}) {
      ComplexMatrix sigma = post_cancellation_noise_covariance(*sys);
      ComplexMatrix g_own = sys->matrix.middleCols(sys->own_offset, sys->own_count);
      for (size_t k = 0; k < n_snr; ++k) {
        double r = rate_bits(g_own, sigma, powers[k]) / plan.frame_length;
        if (sys == &out.sys_a)
          rates[k].push_back(r);
        else
          rates[k].back() += r;
      }
    }
  }

  double prev_rate = 0.0, prev_log2p = 0.0;
  for (size_t k = 0; k < n_snr; ++k) {
    SweepPoint pt;
    pt.snr_db = snr_db[k];
    const auto& rs = rates[k];
    const int n = static_cast<int>(rs.size());
    if (n > 0) {
      double mean = 0.0;
      for (double r : rs) mean += r;
      mean /= n;
      double var = 0.0;
      for (double r : rs) var += (r - mean) * (r - mean);
      pt.mean_sum_rate = mean;
      pt.ci_half_width = n > 1 ? 1.96 * std::sqrt(var / (n - 1)) / std::sqrt(double(n)) : 0.0;
    }
    double log2p = std::log2(powers[k]);
    pt.slope = k == 0 ? std::numeric_limits<double>::quiet_NaN()
                      : (pt.mean_sum_rate - prev_rate) / (log2p - prev_log2p);
    prev_rate = pt.mean_sum_rate;
    prev_log2p = log2p;
    res.points.push_back(pt);
  }
  res.dof_estimate =
      n_snr >= 2 ? res.points.back().slope : std::numeric_limits<double>::quiet_NaN();
  return res;
}

}  // namespace iccr
