#pragma once

#include <vector>

#include "iccr/channel.hpp"

namespace iccr {

enum class UserId { A, B };
enum class NodeId { TxA, TxB, Relay };

UserId other_user(UserId);
int node_antennas(const AntennaConfig&, NodeId);
// coefficient matrix from `node` to `rx`'s receiver in one slot
const ComplexMatrix& channel_matrix(const SlotChannels&, UserId rx, NodeId node);

enum class RuleKind {
  Silent,
  FreshCombination,   // random linear combinations of this slot's new symbols
  ResendOverheard,    // components of the other side's past outputs, known via delayed CSI
  ResendOwnFeedback,  // components of the node's own receiver's fed-back outputs
  ResendSum           // relay only: componentwise sums of both receivers' past outputs
};

// one component of a receiver's past output: antenna `antenna` at slot `slot`
struct SignalRef {
  UserId rx;
  int slot = 0;
  int antenna = 0;
};

bool operator==(const SignalRef&, const SignalRef&);

struct TransmitRule {
  RuleKind kind = RuleKind::Silent;
  // FreshCombination: which of the slot's new symbol blocks enter the combination
  bool combine_a = false;
  bool combine_b = false;
  // leading antennas that carry signal; rows beyond stay zero
  int active_rows = 0;
  // Resend*: the resent components, one per active antenna (sources2 is the
  // second addend of ResendSum)
  std::vector<SignalRef> sources;
  std::vector<SignalRef> sources2;
  // power normalization so every transmitted vector has unit average power
  // at transmit power 1 (fresh rules are additionally scaled by sqrt(P))
  double scale = 1.0;
};

struct SlotPlan {
  TransmitRule tx_a, tx_b, relay;
  // new symbols introduced this slot, as slices of each user's symbol vector
  int fresh_offset_a = 0, fresh_count_a = 0;
  int fresh_offset_b = 0, fresh_count_b = 0;
};

struct SchemePlan {
  AntennaConfig config;
  FeedbackMode mode;
  ConditionLabel condition = ConditionLabel::I;
  int frame_length = 0;     // slots per frame
  int symbols_per_user = 0;
  // receivers decode both users' streams jointly (single-phase plans where
  // every slot mixes both users)
  bool joint_decode = false;
  std::vector<SlotPlan> slots;
};

// Selects and lays out the transmission scheme for the antenna regime and
// feedback mode. Throws std::invalid_argument on invalid config/mode.
SchemePlan build_scheme(const AntennaConfig&, const FeedbackMode&);

struct SlotPrecoders {
  ComplexMatrix tx_a, tx_b, relay;  // 0x0 when the node sends no fresh combination
};

struct SlotSignals {
  ComplexVector x_a, x_b, x_c;
  ComplexVector y_a, y_b;
  ComplexVector z_a, z_b;  // realized noise, empty in noiseless runs
};

struct Transcript {
  SchemePlan plan;
  ChannelSequence channel;  // the frame's slots, kept so the transcript replays standalone
  NoiseSpec noise;
  ComplexVector symbols_a, symbols_b;
  std::vector<SlotPrecoders> precoders;
  std::vector<SlotSignals> slots;
};

// stacked active precoder rows span all of the slot's new symbols
bool precoder_admissible(const SchemePlan&, int slot, const SlotPrecoders&);

// Runs one frame. Precoders are drawn from rng (resampled until admissible)
// and retransmission slots read earlier outputs only. Under delayed CSI and
// Shannon feedback the retransmitted values are the noise-free parts (the
// senders reconstruct them from past CSI); under output feedback they are
// the receivers' noisy observations.
Transcript run_scheme(const SchemePlan&, const ChannelSequence&, const ComplexVector& symbols_a,
                      const ComplexVector& symbols_b, RandomSource& rng,
                      const NoiseSpec& noise = {});

}  // namespace iccr
