#include "iccr/schemes.hpp"

#include <cmath>
#include <stdexcept>

namespace iccr {

UserId other_user(UserId u) { return u == UserId::A ? UserId::B : UserId::A; }

int node_antennas(const AntennaConfig& c, NodeId n) {
  return n == NodeId::Relay ? c.relay : c.tx;
}

const ComplexMatrix& channel_matrix(const SlotChannels& s, UserId rx, NodeId node) {
  if (rx == UserId::A) {
    switch (node) {
      case NodeId::TxA: return s.h_aa;
      case NodeId::TxB: return s.h_ab;
      case NodeId::Relay: return s.h_ac;
    }
  }
  switch (node) {
    case NodeId::TxA: return s.h_ba;
    case NodeId::TxB: return s.h_bb;
    case NodeId::Relay: return s.h_bc;
  }
  throw std::logic_error("bad node");
}

bool operator==(const SignalRef& l, const SignalRef& r) {
  return l.rx == r.rx && l.slot == r.slot && l.antenna == r.antenna;
}

namespace {

TransmitRule fresh_rule(bool a, bool b, int rows) {
  TransmitRule r;
  r.kind = RuleKind::FreshCombination;
  r.combine_a = a;
  r.combine_b = b;
  r.active_rows = rows;
  return r;
}

std::vector<SignalRef> antenna_refs(UserId rx, int slot, int first, int count) {
  std::vector<SignalRef> refs;
  refs.reserve(count);
  for (int j = 0; j < count; ++j) refs.push_back({rx, slot, first + j});
  return refs;
}

TransmitRule resend_rule(RuleKind kind, std::vector<SignalRef> srcs,
                         std::vector<SignalRef> srcs2 = {}) {
  TransmitRule r;
  r.kind = kind;
  r.active_rows = static_cast<int>(srcs.size());
  r.sources = std::move(srcs);
  r.sources2 = std::move(srcs2);
  return r;
}

int rule_columns(const SlotPlan& sp, const TransmitRule& r) {
  return (r.combine_a ? sp.fresh_count_a : 0) + (r.combine_b ? sp.fresh_count_b : 0);
}

// Power normalization. Fresh combinations get 1/sqrt(rows*cols) so that with
// unit-power symbols and CN(0,1) precoder entries E||x||^2 = P. Resent
// components have expected power proportional to the number of nodes that
// were transmitting in the source slot, so the scale sums those counts.
void finalize_scales(SchemePlan& plan) {
  auto active_count = [&](int slot) {
    const SlotPlan& sp = plan.slots.at(slot);
    int n = 0;
    for (const TransmitRule* r : {&sp.tx_a, &sp.tx_b, &sp.relay})
      if (r->kind != RuleKind::Silent) ++n;
    return n;
  };
  for (SlotPlan& sp : plan.slots) {
    for (TransmitRule* r : {&sp.tx_a, &sp.tx_b, &sp.relay}) {
      switch (r->kind) {
        case RuleKind::Silent:
          break;
        case RuleKind::FreshCombination: {
          int cols = rule_columns(sp, *r);
          r->scale = 1.0 / std::sqrt(double(r->active_rows) * double(cols));
          break;
        }
        case RuleKind::ResendOverheard:
        case RuleKind::ResendOwnFeedback:
        case RuleKind::ResendSum: {
          double denom = 0;
          for (const SignalRef& ref : r->sources) denom += active_count(ref.slot);
          for (const SignalRef& ref : r->sources2) denom += active_count(ref.slot);
          r->scale = 1.0 / std::sqrt(denom);
          break;
        }
      }
    }
  }
}

// Two single-user phases followed by a retransmission phase. Each
// retransmission slot carries, on antenna k of the senders, one past output
// component per phase slot, which gives every fresh block one extra
// equation at its receiver per retransmission slot.
//
// Layout knobs: phase_len = slots per fresh phase, retr = number of
// retransmission slots, tx_comps / relay_comps = how many phase slots the
// transmitters resp. the relay cover in each retransmission slot.
SchemePlan two_phase_plan(const AntennaConfig& cfg, const FeedbackMode& mode, int phase_len,
                          int retr, int tx_comps, int relay_comps, int block, int relay_rows) {
  SchemePlan plan;
  plan.config = cfg;
  plan.mode = mode;
  plan.frame_length = 2 * phase_len + retr;
  plan.symbols_per_user = block * phase_len;
  plan.slots.resize(plan.frame_length);
  for (int t = 0; t < phase_len; ++t) {
    SlotPlan& sp = plan.slots[t];
    sp.fresh_offset_a = t * block;
    sp.fresh_count_a = block;
    sp.tx_a = fresh_rule(true, false, cfg.tx);
    if (relay_rows > 0) sp.relay = fresh_rule(true, false, relay_rows);
  }
  for (int t = 0; t < phase_len; ++t) {
    SlotPlan& sp = plan.slots[phase_len + t];
    sp.fresh_offset_b = t * block;
    sp.fresh_count_b = block;
    sp.tx_b = fresh_rule(false, true, cfg.tx);
    if (relay_rows > 0) sp.relay = fresh_rule(false, true, relay_rows);
  }
  const bool output_fb = mode.kind == FeedbackKind::DelayedOutput;
  for (int k = 0; k < retr; ++k) {
    SlotPlan& sp = plan.slots[2 * phase_len + k];
    // components of receiver B's outputs over user A's phase, and vice versa
    auto b_tx = [&](int first, int count) {
      std::vector<SignalRef> refs;
      for (int tau = 0; tau < count; ++tau) refs.push_back({UserId::B, first + tau, k});
      return refs;
    };
    auto a_tx = [&](int first, int count) {
      std::vector<SignalRef> refs;
      for (int tau = 0; tau < count; ++tau) refs.push_back({UserId::A, phase_len + first + tau, k});
      return refs;
    };
    if (output_fb) {
      sp.tx_a = resend_rule(RuleKind::ResendOwnFeedback, a_tx(0, tx_comps));
      sp.tx_b = resend_rule(RuleKind::ResendOwnFeedback, b_tx(0, tx_comps));
    } else {
      sp.tx_a = resend_rule(RuleKind::ResendOverheard, b_tx(0, tx_comps));
      sp.tx_b = resend_rule(RuleKind::ResendOverheard, a_tx(0, tx_comps));
    }
    if (relay_comps > 0)
      sp.relay = resend_rule(RuleKind::ResendSum, b_tx(tx_comps, relay_comps),
                             a_tx(tx_comps, relay_comps));
  }
  return plan;
}

// One fresh slot per user, then a single retransmission slot that resends
// components 0..tx_comps-1 of each overheard output vector through the
// transmitters, and components tx_comps.. through the relay as sums.
SchemePlan three_slot_plan(const AntennaConfig& cfg, const FeedbackMode& mode, int block,
                           int relay_fresh_rows, int tx_comps, int relay_comps) {
  SchemePlan plan;
  plan.config = cfg;
  plan.mode = mode;
  plan.frame_length = 3;
  plan.symbols_per_user = block;
  plan.slots.resize(3);
  plan.slots[0].fresh_count_a = block;
  plan.slots[0].tx_a = fresh_rule(true, false, cfg.tx);
  if (relay_fresh_rows > 0) plan.slots[0].relay = fresh_rule(true, false, relay_fresh_rows);
  plan.slots[1].fresh_count_b = block;
  plan.slots[1].tx_b = fresh_rule(false, true, cfg.tx);
  if (relay_fresh_rows > 0) plan.slots[1].relay = fresh_rule(false, true, relay_fresh_rows);

  SlotPlan& sp = plan.slots[2];
  auto b_refs = antenna_refs(UserId::B, 0, 0, tx_comps);
  auto a_refs = antenna_refs(UserId::A, 1, 0, tx_comps);
  if (mode.kind == FeedbackKind::DelayedOutput) {
    sp.tx_a = resend_rule(RuleKind::ResendOwnFeedback, a_refs);
    sp.tx_b = resend_rule(RuleKind::ResendOwnFeedback, b_refs);
  } else {
    sp.tx_a = resend_rule(RuleKind::ResendOverheard, b_refs);
    sp.tx_b = resend_rule(RuleKind::ResendOverheard, a_refs);
  }
  if (relay_comps > 0)
    sp.relay = resend_rule(RuleKind::ResendSum, antenna_refs(UserId::B, 0, tx_comps, relay_comps),
                           antenna_refs(UserId::A, 1, tx_comps, relay_comps));
  return plan;
}

// Single-phase plan: both users (and the relay, which knows both messages)
// send fresh combinations every slot and each receiver decodes jointly.
// With an odd stream total the two slots split it ceil/floor and floor/ceil.
SchemePlan mac_plan(const AntennaConfig& cfg, const FeedbackMode& mode) {
  int n = std::min(cfg.rx, 2 * cfg.tx + cfg.relay);
  SchemePlan plan;
  plan.config = cfg;
  plan.mode = mode;
  plan.joint_decode = true;
  plan.frame_length = n % 2 == 0 ? 1 : 2;
  plan.symbols_per_user = n % 2 == 0 ? n / 2 : n;
  plan.slots.resize(plan.frame_length);
  for (int t = 0; t < plan.frame_length; ++t) {
    SlotPlan& sp = plan.slots[t];
    if (n % 2 == 0) {
      sp.fresh_count_a = sp.fresh_count_b = n / 2;
    } else if (t == 0) {
      sp.fresh_count_a = (n + 1) / 2;
      sp.fresh_count_b = n / 2;
    } else {
      sp.fresh_offset_a = (n + 1) / 2;
      sp.fresh_count_a = n / 2;
      sp.fresh_offset_b = n / 2;
      sp.fresh_count_b = (n + 1) / 2;
    }
    if (sp.fresh_count_a > 0) sp.tx_a = fresh_rule(true, false, cfg.tx);
    if (sp.fresh_count_b > 0) sp.tx_b = fresh_rule(false, true, cfg.tx);
    sp.relay = fresh_rule(sp.fresh_count_a > 0, sp.fresh_count_b > 0, cfg.relay);
  }
  return plan;
}

// Plain time sharing: each user gets one slot, helped by the relay.
SchemePlan tdm_plan(const AntennaConfig& cfg, const FeedbackMode& mode) {
  int block = std::min(cfg.tx + cfg.relay, cfg.rx);
  SchemePlan plan;
  plan.config = cfg;
  plan.mode = mode;
  plan.frame_length = 2;
  plan.symbols_per_user = block;
  plan.slots.resize(2);
  plan.slots[0].fresh_count_a = block;
  plan.slots[0].tx_a = fresh_rule(true, false, cfg.tx);
  plan.slots[0].relay = fresh_rule(true, false, cfg.relay);
  plan.slots[1].fresh_count_b = block;
  plan.slots[1].tx_b = fresh_rule(false, true, cfg.tx);
  plan.slots[1].relay = fresh_rule(false, true, cfg.relay);
  return plan;
}

}  // namespace

SchemePlan build_scheme(const AntennaConfig& cfg, const FeedbackMode& mode) {
  validate(cfg);
  validate(mode);
  const int mt = cfg.tx, mc = cfg.relay, mr = cfg.rx;
  ConditionLabel cond = classify_condition(cfg);
  SchemePlan plan;
  if (mode.kind == FeedbackKind::NoFeedback) {
    plan = mt + mc <= mr ? mac_plan(cfg, mode) : tdm_plan(cfg, mode);
  } else {
    switch (cond) {
      case ConditionLabel::I:
        // receiver antennas cover everything sent; no retransmissions needed
        plan = mac_plan(cfg, mode);
        break;
      case ConditionLabel::II:
        if (mode.relay_has_feedback) {
          // transmitters resend the first mt components, relay sums the rest
          plan = two_phase_plan(cfg, mode, mr, mt + mc - mr, mt, mr - mt, mt + mc, mc);
        } else if (2 * mt >= mr) {
          // shorter phases so the transmitters can cover all components alone
          plan = two_phase_plan(cfg, mode, mt, mt + mc - mr, mt, 0, mt + mc, mc);
        } else {
          plan = tdm_plan(cfg, mode);
        }
        break;
      case ConditionLabel::III:
        // mt >= mr: the transmitters can resend whole output vectors
        plan = two_phase_plan(cfg, mode, mr, mt + mc - mr, mr, 0, mt + mc, mc);
        break;
      case ConditionLabel::IV:
        if (mode.relay_has_feedback) {
          plan = three_slot_plan(cfg, mode, 2 * mr, 2 * mr - mt, mt, mr - mt);
        } else if (2 * mt >= mr) {
          plan = three_slot_plan(cfg, mode, mt + mr, mr, mt, 0);
        } else {
          plan = tdm_plan(cfg, mode);
        }
        break;
      case ConditionLabel::V:
        plan = three_slot_plan(cfg, mode, 2 * mr, std::max(0, 2 * mr - mt), mr, 0);
        break;
    }
  }
  plan.condition = cond;
  finalize_scales(plan);
  return plan;
}

bool precoder_admissible(const SchemePlan& plan, int slot, const SlotPrecoders& pre) {
  const SlotPlan& sp = plan.slots.at(slot);
  const int cols = sp.fresh_count_a + sp.fresh_count_b;
  if (cols == 0) return true;
  int rows = 0;
  const std::pair<const TransmitRule*, const ComplexMatrix*> nodes[] = {
      {&sp.tx_a, &pre.tx_a}, {&sp.tx_b, &pre.tx_b}, {&sp.relay, &pre.relay}};
  for (auto [rule, mat] : nodes) {
    if (rule->kind != RuleKind::FreshCombination) continue;
    if (mat->rows() != rule->active_rows || mat->cols() != rule_columns(sp, *rule))
      throw std::invalid_argument("precoder shape does not match the slot plan");
    rows += rule->active_rows;
  }
  if (rows < cols) return false;
  ComplexMatrix stacked = ComplexMatrix::Zero(rows, cols);
  int row = 0;
  for (auto [rule, mat] : nodes) {
    if (rule->kind != RuleKind::FreshCombination) continue;
    int col = 0;
    if (rule->combine_a) {
      stacked.block(row, 0, rule->active_rows, sp.fresh_count_a) =
          mat->leftCols(sp.fresh_count_a);
      col = sp.fresh_count_a;
    }
    if (rule->combine_b)
      stacked.block(row, sp.fresh_count_a, rule->active_rows, sp.fresh_count_b) =
          mat->middleCols(rule->combine_a ? col : 0, sp.fresh_count_b);
    row += rule->active_rows;
  }
  return numeric_rank(stacked).rank == cols;
}

namespace {

Complex resend_value(const Transcript& tr, const SignalRef& ref, int current_slot) {
  if (ref.slot >= current_slot) throw std::logic_error("retransmission of a future output");
  const SlotSignals& s = tr.slots.at(ref.slot);
  const ComplexVector& y = ref.rx == UserId::A ? s.y_a : s.y_b;
  Complex v = y(ref.antenna);
  // delayed CSI / Shannon feedback: senders rebuild the noise-free part
  if (tr.noise.enabled && tr.plan.mode.kind != FeedbackKind::DelayedOutput) {
    const ComplexVector& z = ref.rx == UserId::A ? s.z_a : s.z_b;
    v -= z(ref.antenna);
  }
  return v;
}

ComplexVector node_signal(const Transcript& tr, int t, const TransmitRule& rule,
                          const ComplexMatrix& pre, int antennas, double sqrt_p) {
  ComplexVector x = ComplexVector::Zero(antennas);
  const SlotPlan& sp = tr.plan.slots[t];
  switch (rule.kind) {
    case RuleKind::Silent:
      break;
    case RuleKind::FreshCombination: {
      ComplexVector s(rule_columns(sp, rule));
      int at = 0;
      if (rule.combine_a) {
        s.segment(at, sp.fresh_count_a) = tr.symbols_a.segment(sp.fresh_offset_a, sp.fresh_count_a);
        at += sp.fresh_count_a;
      }
      if (rule.combine_b)
        s.segment(at, sp.fresh_count_b) = tr.symbols_b.segment(sp.fresh_offset_b, sp.fresh_count_b);
      x.head(rule.active_rows) = rule.scale * sqrt_p * (pre * s);
      break;
    }
    case RuleKind::ResendOverheard:
    case RuleKind::ResendOwnFeedback:
      for (int i = 0; i < rule.active_rows; ++i)
        x(i) = rule.scale * resend_value(tr, rule.sources[i], t);
      break;
    case RuleKind::ResendSum:
      for (int i = 0; i < rule.active_rows; ++i)
        x(i) = rule.scale *
               (resend_value(tr, rule.sources[i], t) + resend_value(tr, rule.sources2[i], t));
      break;
  }
  return x;
}

}  // namespace

Transcript run_scheme(const SchemePlan& plan, const ChannelSequence& chan,
                      const ComplexVector& symbols_a, const ComplexVector& symbols_b,
                      RandomSource& rng, const NoiseSpec& noise) {
  if (!(chan.config == plan.config))
    throw std::invalid_argument("channel antenna counts do not match the plan");
  if (static_cast<int>(chan.slots.size()) < plan.frame_length)
    throw std::invalid_argument("channel sequence shorter than the frame");
  if (symbols_a.size() != plan.symbols_per_user || symbols_b.size() != plan.symbols_per_user)
    throw std::invalid_argument("symbol vectors must have symbols_per_user entries");

  Transcript tr;
  tr.plan = plan;
  tr.noise = noise;
  tr.symbols_a = symbols_a;
  tr.symbols_b = symbols_b;
  tr.channel.config = chan.config;
  tr.channel.slots.assign(chan.slots.begin(), chan.slots.begin() + plan.frame_length);
  const double sqrt_p = std::sqrt(transmit_power(noise));

  for (int t = 0; t < plan.frame_length; ++t) {
    const SlotPlan& sp = plan.slots[t];
    SlotPrecoders pre;
    for (int attempt = 0;; ++attempt) {
      auto draw = [&](const TransmitRule& rule) {
        return rule.kind == RuleKind::FreshCombination
                   ? rng.gaussian_matrix(rule.active_rows, rule_columns(sp, rule))
                   : ComplexMatrix();
      };
      pre.tx_a = draw(sp.tx_a);
      pre.tx_b = draw(sp.tx_b);
      pre.relay = draw(sp.relay);
      if (precoder_admissible(plan, t, pre)) break;
      if (attempt >= 64) throw std::runtime_error("could not draw admissible precoders");
    }
    tr.precoders.push_back(pre);

    SlotSignals rec;
    rec.x_a = node_signal(tr, t, sp.tx_a, pre.tx_a, plan.config.tx, sqrt_p);
    rec.x_b = node_signal(tr, t, sp.tx_b, pre.tx_b, plan.config.tx, sqrt_p);
    rec.x_c = node_signal(tr, t, sp.relay, pre.relay, plan.config.relay, sqrt_p);
    SlotOutput out = channel_output(tr.channel, t, rec.x_a, rec.x_b, rec.x_c);
    rec.y_a = out.y_a;
    rec.y_b = out.y_b;
    if (noise.enabled) {
      rec.z_a = rng.gaussian_vector(plan.config.rx);
      rec.z_b = rng.gaussian_vector(plan.config.rx);
      rec.y_a += rec.z_a;
      rec.y_b += rec.z_b;
    }
    tr.slots.push_back(std::move(rec));
  }
  return tr;
}

}  // namespace iccr
