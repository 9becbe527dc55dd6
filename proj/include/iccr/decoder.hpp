#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "iccr/regions.hpp"
#include "iccr/schemes.hpp"

namespace iccr {

// where an equation row came from: receiver rx's output antenna at slot,
// either observed directly or recovered from a retransmission slot
struct RowTag {
  UserId rx = UserId::A;
  int slot = 0;
  int antenna = 0;
  bool recovered = false;
};

// bookkeeping for one retransmission slot's local solve, kept so the
// post-cancellation noise covariance can be assembled exactly
struct RecoveryRecord {
  int slot = 0;
  std::vector<int> rows;     // indices of the recovered equation rows
  ComplexMatrix solve_matrix;  // maps unknown components to the slot's output
  ComplexMatrix noise_mix;     // pseudo-inverse applied to the slot's output
  ComplexMatrix cancel_noise;  // coefficients of the receiver's own-record noise
                               // that the subtraction injects (empty under
                               // output feedback, where cancellation is exact)
  bool source_noise = false;   // resent values carry the source slot's noise
  double residual = 0.0;
  bool degenerate = false;
};

struct EquationSystem {
  UserId receiver = UserId::A;
  ComplexMatrix matrix;  // rows x unknown symbols
  ComplexVector rhs;
  std::vector<RowTag> provenance;
  std::vector<RecoveryRecord> recoveries;
  // column layout: joint decoding stacks [user a | user b], otherwise own only
  int own_offset = 0;
  int own_count = 0;
  bool degenerate = false;            // some local solve was singular
  double cancellation_residual = 0.0;  // max residual over the local solves
};

// Replays the frame from receiver `rx`'s side: direct rows from its fresh
// slots, then per retransmission slot subtracts the parts rebuilt from its
// own past outputs, solves for the other receiver's resent components, and
// appends those as recovered equation rows.
EquationSystem eliminate_known_interference(const Transcript&, UserId rx);

struct DecodeReport {
  bool decodable = false;
  bool degenerate = false;
  int rank = 0;
  double condition_number = 0.0;        // of the equation matrix (all singular values)
  ComplexVector symbol_estimates;       // own symbols
  double max_symbol_error = 0.0;        // vs the transmitted symbols
  double cancellation_residual = 0.0;
};

// Solves the eliminated system and compares against the transcript's symbols.
DecodeReport decode(const EquationSystem&, const Transcript&);

// Per-user streams per slot when both receivers can decode.
std::optional<std::pair<Rational, Rational>> streams_per_frame(const SchemePlan&,
                                                               const DecodeReport& a,
                                                               const DecodeReport& b);

// Covariance of the effective noise on the system's rows at unit noise power:
// identity on direct rows; on recovered rows the local solve mixes the
// retransmission slot's own noise, the resent values' source noise (output
// feedback only), and the noise injected by subtracting noisy own records
// (delayed CSI / Shannon only).
ComplexMatrix post_cancellation_noise_covariance(const EquationSystem&);

}  // namespace iccr
