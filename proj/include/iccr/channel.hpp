#pragma once

#include <string>
#include <vector>

#include "iccr/numerics.hpp"

namespace iccr {

// Antenna counts: both transmitters have `tx`, the cognitive relay has
// `relay`, both receivers have `rx`. CLI flags: --mt, --mc, --mr.
struct AntennaConfig {
  int tx = 1;
  int relay = 1;
  int rx = 1;
};

bool operator==(const AntennaConfig&, const AntennaConfig&);
void validate(const AntennaConfig&);  // throws std::invalid_argument on nonpositive counts

enum class FeedbackKind { DelayedCsit, DelayedOutput, DelayedShannon, NoFeedback };

struct FeedbackMode {
  FeedbackKind kind = FeedbackKind::DelayedCsit;
  // false: delayed feedback reaches the transmitters but not the relay.
  // NoFeedback requires false.
  bool relay_has_feedback = true;
};

void validate(const FeedbackMode&);

// Antenna-count regimes that select the transmission scheme. Exactly one
// label applies to every valid config:
//   I:   tx + relay <= rx
//   II:  (tx+relay)/2 <= rx < tx+relay and rx > tx
//   III: (tx+relay)/2 <= rx < tx+relay and rx <= tx
//   IV:  rx < (tx+relay)/2 and rx > tx
//   V:   rx < (tx+relay)/2 and rx <= tx
enum class ConditionLabel { I, II, III, IV, V };

ConditionLabel classify_condition(const AntennaConfig&);

std::string to_string(ConditionLabel);
std::string to_string(FeedbackKind);
std::string to_string(const FeedbackMode&);  // e.g. "csit", "csit-tx-only", "none"
std::string to_string(const AntennaConfig&);  // "MtxMcxMr", e.g. "1x2x2"

// Per-slot coefficient matrices, all rx-rows: h_aa is rx x tx, h_ac is
// rx x relay, and so on. First letter: receiving side, second: sending side.
struct SlotChannels {
  ComplexMatrix h_aa, h_ab, h_ac;
  ComplexMatrix h_ba, h_bb, h_bc;
};

struct ChannelSequence {
  AntennaConfig config;
  std::vector<SlotChannels> slots;
};

// i.i.d. CN(0,1) coefficients, fresh every slot
ChannelSequence sample_channel(const AntennaConfig&, int slots, RandomSource&);

struct NoiseSpec {
  bool enabled = false;
  double snr_db = 0.0;  // transmit power P = 10^(snr_db/10), unit noise variance
};

double transmit_power(const NoiseSpec&);

struct SlotOutput {
  ComplexVector y_a, y_b;
};

// y_a = h_aa x_a + h_ab x_b + h_ac x_c (+ z), y_b likewise. rng is required
// when noise is enabled.
SlotOutput channel_output(const ChannelSequence&, int slot, const ComplexVector& x_a,
                          const ComplexVector& x_b, const ComplexVector& x_c,
                          const NoiseSpec& noise = {}, RandomSource* rng = nullptr);

}  // namespace iccr
