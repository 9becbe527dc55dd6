#pragma once

#include <cstdint>
#include <vector>

#include "iccr/decoder.hpp"

namespace iccr {

struct TrialBatchSpec {
  AntennaConfig config;
  FeedbackMode mode;
  int trials = 100;
  std::uint64_t base_seed = 1;  // trial i uses seed base_seed + i
  NoiseSpec noise;
};

// Conditioning threshold above which a trial's channel draw is considered
// too ill-conditioned to judge decodability in double precision.
inline constexpr double kConditionFilter = 1e8;

struct BatchStats {
  AntennaConfig config;
  FeedbackMode mode;
  ConditionLabel condition = ConditionLabel::I;
  int frame_length = 0;
  int symbols_per_user = 0;
  int trials = 0;
  int decodable_count = 0;
  int filtered_count = 0;    // conditioning above kConditionFilter
  int degenerate_count = 0;  // a local solve was singular
  double decodable_fraction = 0.0;  // among trials passing both filters
  double filtered_fraction = 0.0;   // of all trials
  double median_condition_number = 0.0;
  double max_symbol_error_p99 = 0.0;  // 99th percentile over decodable trials
  double max_cancellation_residual = 0.0;
};

// Seeded decodability statistics for the scheme picked by config + mode.
BatchStats run_batch(const TrialBatchSpec&);

struct SweepPoint {
  double snr_db = 0.0;
  double mean_sum_rate = 0.0;   // bits per slot, averaged over trials
  double ci_half_width = 0.0;   // 95% normal CI
  double slope = 0.0;           // Δrate / Δlog2(P) from the previous point (NaN on the first)
};

struct SweepResult {
  AntennaConfig config;
  FeedbackMode mode;
  int frame_length = 0;
  int symbols_per_user = 0;
  std::vector<SweepPoint> points;
  double dof_estimate = 0.0;  // slope between the two highest-SNR points
  Rational exact_sum_dof;     // 2 * symbols_per_user / frame_length
  int trials_used = 0;
  int trials_excluded = 0;    // degenerate, filtered, or undecodable draws
};

// Finite-SNR rate sweep whose log-SNR slope estimates the sum DoF. Rates are
// a mutual-information proxy on each receiver's post-cancellation system with
// its exact effective noise covariance; the channel draws are shared across
// SNR points, so the slope isolates the power scaling. Empty snr list uses
// {30, 40, 50, 60} dB.
SweepResult estimate_dof_sweep(const TrialBatchSpec&, std::vector<double> snr_db = {});

}  // namespace iccr
