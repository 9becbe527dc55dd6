#include "iccr/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace iccr {

bool operator==(const AntennaConfig& lhs, const AntennaConfig& rhs) {
  return lhs.tx == rhs.tx && lhs.relay == rhs.relay && lhs.rx == rhs.rx;
}

void validate(const AntennaConfig& config) {
  if (config.tx < 1 || config.relay < 1 || config.rx < 1)
    throw std::invalid_argument("antenna counts must be positive");
}

void validate(const FeedbackMode& mode) {
  if (mode.kind == FeedbackKind::NoFeedback && mode.relay_has_feedback)
    throw std::invalid_argument("NoFeedback cannot have relay feedback");
}

ConditionLabel classify_condition(const AntennaConfig& config) {
  validate(config);
  const int mt = config.tx, mc = config.relay, mr = config.rx;
  if (mt + mc <= mr) return ConditionLabel::I;
  if (mt + mc <= 2 * mr)  // (tx+relay)/2 <= rx < tx+relay
    return mr > mt ? ConditionLabel::II : ConditionLabel::III;
  return mr > mt ? ConditionLabel::IV : ConditionLabel::V;
}

std::string to_string(ConditionLabel label) {
  switch (label) {
    case ConditionLabel::I: return "I";
    case ConditionLabel::II: return "II";
    case ConditionLabel::III: return "III";
    case ConditionLabel::IV: return "IV";
    case ConditionLabel::V: return "V";
  }
  return "?";
}

std::string to_string(FeedbackKind kind) {
  switch (kind) {
    case FeedbackKind::DelayedCsit: return "csit";
    case FeedbackKind::DelayedOutput: return "output";
    case FeedbackKind::DelayedShannon: return "shannon";
    case FeedbackKind::NoFeedback: return "none";
  }
  return "?";
}

std::string to_string(const FeedbackMode& mode) {
  std::string s = to_string(mode.kind);
  if (mode.kind != FeedbackKind::NoFeedback && !mode.relay_has_feedback) s += "-tx-only";
  return s;
}

std::string to_string(const AntennaConfig& c) {
  return std::to_string(c.tx) + "x" + std::to_string(c.relay) + "x" + std::to_string(c.rx);
}

ChannelSequence sample_channel(const AntennaConfig& config, int slots, RandomSource& rng) {
  validate(config);
  if (slots < 0) throw std::invalid_argument("slot count must be nonnegative");
  ChannelSequence seq;
  seq.config = config;
  seq.slots.reserve(slots);
  for (int t = 0; t < slots; ++t) {
    SlotChannels sc;
    sc.h_aa = rng.gaussian_matrix(config.rx, config.tx);
    sc.h_ab = rng.gaussian_matrix(config.rx, config.tx);
    sc.h_ac = rng.gaussian_matrix(config.rx, config.relay);
    sc.h_ba = rng.gaussian_matrix(config.rx, config.tx);
    sc.h_bb = rng.gaussian_matrix(config.rx, config.tx);
    sc.h_bc = rng.gaussian_matrix(config.rx, config.relay);
    seq.slots.push_back(std::move(sc));
  }
  return seq;
}

double transmit_power(const NoiseSpec& noise) {
  return noise.enabled ? std::pow(10.0, noise.snr_db / 10.0) : 1.0;
}

SlotOutput channel_output(const ChannelSequence& seq, int slot, const ComplexVector& x_a,
                          const ComplexVector& x_b, const ComplexVector& x_c,
                          const NoiseSpec& noise, RandomSource* rng) {
  if (slot < 0 || slot >= static_cast<int>(seq.slots.size()))
    throw std::out_of_range("channel_output: slot out of range");
  const AntennaConfig& c = seq.config;
  if (x_a.size() != c.tx || x_b.size() != c.tx || x_c.size() != c.relay)
    throw std::invalid_argument("channel_output: input length mismatch");
  const SlotChannels& h = seq.slots[slot];
  SlotOutput out;
  out.y_a = h.h_aa * x_a + h.h_ab * x_b + h.h_ac * x_c;
  out.y_b = h.h_ba * x_a + h.h_bb * x_b + h.h_bc * x_c;
  if (noise.enabled) {
    if (!rng) throw std::invalid_argument("channel_output: noise enabled but no rng");
    out.y_a += rng->gaussian_vector(c.rx);
    out.y_b += rng->gaussian_vector(c.rx);
  }
  return out;
}

}  // namespace iccr
