#include "iccr/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/SVD>

namespace iccr {

namespace {

ComplexMatrix pseudo_inverse(const ComplexMatrix& m, double rel_tol) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  const double cut = sv.size() > 0 ? rel_tol * sv(0) : 0.0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

// effective map from user u's slot-`slot` fresh block to receiver `target`
ComplexMatrix effective_block(const Transcript& tr, int slot, UserId u, UserId target) {
  const SlotPlan& sp = tr.plan.slots[slot];
  const int count = u == UserId::A ? sp.fresh_count_a : sp.fresh_count_b;
  const double sqrt_p = std::sqrt(transmit_power(tr.noise));
  ComplexMatrix e = ComplexMatrix::Zero(tr.plan.config.rx, count);
  const SlotPrecoders& pre = tr.precoders[slot];
  const std::pair<const TransmitRule*, NodeId> nodes[] = {
      {&sp.tx_a, NodeId::TxA}, {&sp.tx_b, NodeId::TxB}, {&sp.relay, NodeId::Relay}};
  const ComplexMatrix* mats[] = {&pre.tx_a, &pre.tx_b, &pre.relay};
  for (int n = 0; n < 3; ++n) {
    const TransmitRule& rule = *nodes[n].first;
    if (rule.kind != RuleKind::FreshCombination) continue;
    if (!(u == UserId::A ? rule.combine_a : rule.combine_b)) continue;
    const ComplexMatrix& h = channel_matrix(tr.channel.slots[slot], target, nodes[n].second);
    const int col0 = (u == UserId::B && rule.combine_a) ? sp.fresh_count_a : 0;
    e += h.leftCols(rule.active_rows) *
         (rule.scale * sqrt_p * mats[n]->middleCols(col0, count));
  }
  return e;
}

bool has_resend(const SlotPlan& sp) {
  for (const TransmitRule* r : {&sp.tx_a, &sp.tx_b, &sp.relay})
    if (r->kind == RuleKind::ResendOverheard || r->kind == RuleKind::ResendOwnFeedback ||
        r->kind == RuleKind::ResendSum)
      return true;
  return false;
}

}  // namespace

EquationSystem eliminate_known_interference(const Transcript& tr, UserId rx) {
  const SchemePlan& plan = tr.plan;
  const int s = plan.symbols_per_user;
  const int mr = plan.config.rx;
  EquationSystem sys;
  sys.receiver = rx;
  const int cols = plan.joint_decode ? 2 * s : s;
  sys.own_offset = plan.joint_decode && rx == UserId::B ? s : 0;
  sys.own_count = s;

  auto col_base = [&](UserId u) { return plan.joint_decode && u == UserId::B ? s : 0; };
  auto block_of = [&](const SlotPlan& sp, UserId u) {
    return u == UserId::A ? std::pair<int, int>{sp.fresh_offset_a, sp.fresh_count_a}
                          : std::pair<int, int>{sp.fresh_offset_b, sp.fresh_count_b};
  };

  std::vector<Eigen::RowVectorXcd> rows;
  std::vector<Complex> rhs;

  for (int t = 0; t < plan.frame_length; ++t) {
    const SlotPlan& sp = plan.slots[t];
    const ComplexVector& y = rx == UserId::A ? tr.slots[t].y_a : tr.slots[t].y_b;

    if (!has_resend(sp)) {
      std::vector<UserId> users;
      for (UserId u : {UserId::A, UserId::B})
        if (block_of(sp, u).second > 0 && (plan.joint_decode || u == rx)) users.push_back(u);
      if (users.empty()) continue;  // the other user's phase, nothing observed for us
      std::vector<ComplexMatrix> blocks;
      for (UserId u : users) blocks.push_back(effective_block(tr, t, u, rx));
      for (int l = 0; l < mr; ++l) {
        Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(cols);
        for (size_t i = 0; i < users.size(); ++i) {
          auto [off, count] = block_of(sp, users[i]);
          row.segment(col_base(users[i]) + off, count) = blocks[i].row(l);
        }
        rows.push_back(std::move(row));
        rhs.push_back(y(l));
        sys.provenance.push_back({rx, t, l, false});
      }
      continue;
    }

    // retransmission slot: split resent components into ones reconstructable
    // from this receiver's own records and ones to solve for
    ComplexVector known = ComplexVector::Zero(mr);
    std::vector<SignalRef> unknowns;
    std::vector<ComplexVector> m_cols;
    std::vector<SignalRef> known_refs;
    std::vector<ComplexVector> c_cols;
    const bool output_fb = plan.mode.kind == FeedbackKind::DelayedOutput;

    auto add_component = [&](const ComplexVector& coeff, const SignalRef& ref) {
      if (ref.rx == rx) {
        const SlotSignals& src = tr.slots[ref.slot];
        const ComplexVector& y_own = rx == UserId::A ? src.y_a : src.y_b;
        known += coeff * y_own(ref.antenna);
        if (!output_fb) {
          // the sender used the noise-free value, so subtracting this noisy
          // record injects its noise with these coefficients
          auto it = std::find(known_refs.begin(), known_refs.end(), ref);
          if (it == known_refs.end()) {
            known_refs.push_back(ref);
            c_cols.push_back(coeff);
          } else {
            c_cols[it - known_refs.begin()] += coeff;
          }
        }
      } else {
        auto it = std::find(unknowns.begin(), unknowns.end(), ref);
        if (it == unknowns.end()) {
          unknowns.push_back(ref);
          m_cols.push_back(coeff);
        } else {
          m_cols[it - unknowns.begin()] += coeff;
        }
      }
    };

    const std::pair<const TransmitRule*, NodeId> nodes[] = {
        {&sp.tx_a, NodeId::TxA}, {&sp.tx_b, NodeId::TxB}, {&sp.relay, NodeId::Relay}};
    for (auto [rule, node] : nodes) {
      if (rule->kind == RuleKind::Silent || rule->kind == RuleKind::FreshCombination) continue;
      const ComplexMatrix& h = channel_matrix(tr.channel.slots[t], rx, node);
      for (int i = 0; i < rule->active_rows; ++i) {
        ComplexVector coeff = rule->scale * h.col(i);
        add_component(coeff, rule->sources[i]);
        if (rule->kind == RuleKind::ResendSum) add_component(coeff, rule->sources2[i]);
      }
    }
    if (unknowns.empty()) continue;

    const int u = static_cast<int>(unknowns.size());
    RecoveryRecord rec;
    rec.slot = t;
    rec.solve_matrix = ComplexMatrix(mr, u);
    for (int j = 0; j < u; ++j) rec.solve_matrix.col(j) = m_cols[j];
    rec.source_noise = output_fb;
    if (!c_cols.empty()) {
      rec.cancel_noise = ComplexMatrix(mr, static_cast<int>(c_cols.size()));
      for (size_t j = 0; j < c_cols.size(); ++j) rec.cancel_noise.col(j) = c_cols[j];
    }

    RankReport rr = numeric_rank(rec.solve_matrix);
    const double s_max = rr.singular_values.front();
    const double s_min = rr.singular_values.back();
    if (rr.rank < u || s_min < 1e-12 * std::max(1.0, s_max)) {
      rec.degenerate = true;
      sys.degenerate = true;
      sys.recoveries.push_back(std::move(rec));
      continue;
    }

    LeastSquaresSolution ls = solve_least_squares(rec.solve_matrix, y - known);
    rec.residual = ls.residual_norm;
    sys.cancellation_residual = std::max(sys.cancellation_residual, ls.residual_norm);
    rec.noise_mix = pseudo_inverse(rec.solve_matrix, kDefaultRankTol);

    for (int j = 0; j < u; ++j) {
      const SignalRef& ref = unknowns[j];
      const SlotPlan& src = plan.slots[ref.slot];
      Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(cols);
      for (UserId uu : {UserId::A, UserId::B}) {
        auto [off, count] = block_of(src, uu);
        if (count == 0) continue;
        if (!plan.joint_decode && uu != rx)
          throw std::logic_error("recovered output depends on an unmodeled symbol block");
        ComplexMatrix e = effective_block(tr, ref.slot, uu, ref.rx);
        row.segment(col_base(uu) + off, count) = e.row(ref.antenna);
      }
      rec.rows.push_back(static_cast<int>(rows.size()));
      rows.push_back(std::move(row));
      rhs.push_back(ls.x(j));
      sys.provenance.push_back({ref.rx, ref.slot, ref.antenna, true});
    }
    sys.recoveries.push_back(std::move(rec));
  }

  sys.matrix = ComplexMatrix(static_cast<int>(rows.size()), cols);
  sys.rhs = ComplexVector(static_cast<int>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    sys.matrix.row(static_cast<int>(i)) = rows[i];
    sys.rhs(static_cast<int>(i)) = rhs[i];
  }
  return sys;
}

DecodeReport decode(const EquationSystem& sys, const Transcript& tr) {
  DecodeReport rep;
  rep.degenerate = sys.degenerate;
  rep.cancellation_residual = sys.cancellation_residual;
  if (sys.matrix.rows() == 0) return rep;

  RankReport rr = numeric_rank(sys.matrix);
  rep.rank = rr.rank;
  const double s_min = rr.singular_values.back();
  rep.condition_number =
      s_min > 0 ? rr.singular_values.front() / s_min : std::numeric_limits<double>::infinity();
  rep.decodable = !sys.degenerate && rep.rank == sys.matrix.cols();

  LeastSquaresSolution ls = solve_least_squares(sys.matrix, sys.rhs);
  rep.symbol_estimates = ls.x.segment(sys.own_offset, sys.own_count);
  const ComplexVector& truth = sys.receiver == UserId::A ? tr.symbols_a : tr.symbols_b;
  rep.max_symbol_error = (rep.symbol_estimates - truth).cwiseAbs().maxCoeff();
  return rep;
}

std::optional<std::pair<Rational, Rational>> streams_per_frame(const SchemePlan& plan,
                                                               const DecodeReport& a,
                                                               const DecodeReport& b) {
  if (!a.decodable || !b.decodable) return std::nullopt;
  Rational per_user(plan.symbols_per_user, plan.frame_length);
  return std::make_pair(per_user, per_user);
}

ComplexMatrix post_cancellation_noise_covariance(const EquationSystem& sys) {
  const int n = static_cast<int>(sys.matrix.rows());
  ComplexMatrix cov = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    if (!sys.provenance[i].recovered) cov(i, i) = 1.0;
  // recovered rows: unit source noise (output feedback), the retransmission
  // slot's noise through the pseudo-inverse, and the own-record noise the
  // subtraction injected. Distinct slots/antennas make the blocks independent.
  for (const RecoveryRecord& rec : sys.recoveries) {
    if (rec.degenerate || rec.rows.empty()) continue;
    const int u = static_cast<int>(rec.rows.size());
    ComplexMatrix block = rec.noise_mix * rec.noise_mix.adjoint();
    if (rec.cancel_noise.cols() > 0) {
      ComplexMatrix bc = rec.noise_mix * rec.cancel_noise;
      block += bc * bc.adjoint();
    }
    if (rec.source_noise) block += ComplexMatrix::Identity(u, u);
    for (int p = 0; p < u; ++p)
      for (int q = 0; q < u; ++q) cov(rec.rows[p], rec.rows[q]) += block(p, q);
  }
  return cov;
}

}  // namespace iccr
