#include "iccr/serialize.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/rational.hpp>

namespace iccr {

namespace {

Json rat_json(const Rational& r) { return to_string(r); }
double rat_float(const Rational& r) { return boost::rational_cast<double>(r); }

Rational rat_from_json(const Json& j) {
  auto r = parse_rational(j.get<std::string>());
  if (!r) throw std::invalid_argument("bad rational: " + j.get<std::string>());
  return *r;
}

// CSV numbers use the JSON shortest-roundtrip formatting; NaN prints empty
std::string csv_num(double x) {
  if (std::isnan(x)) return "";
  return Json(x).dump();
}

const char* kind_name(RuleKind k) {
  switch (k) {
    case RuleKind::Silent: return "silent";
    case RuleKind::FreshCombination: return "fresh";
    case RuleKind::ResendOverheard: return "resend_overheard";
    case RuleKind::ResendOwnFeedback: return "resend_own_feedback";
    case RuleKind::ResendSum: return "resend_sum";
  }
  return "?";
}

RuleKind kind_from_name(const std::string& s) {
  if (s == "silent") return RuleKind::Silent;
  if (s == "fresh") return RuleKind::FreshCombination;
  if (s == "resend_overheard") return RuleKind::ResendOverheard;
  if (s == "resend_own_feedback") return RuleKind::ResendOwnFeedback;
  if (s == "resend_sum") return RuleKind::ResendSum;
  throw std::invalid_argument("bad rule kind: " + s);
}

FeedbackKind feedback_from_name(const std::string& s) {
  if (s == "csit") return FeedbackKind::DelayedCsit;
  if (s == "output") return FeedbackKind::DelayedOutput;
  if (s == "shannon") return FeedbackKind::DelayedShannon;
  if (s == "none") return FeedbackKind::NoFeedback;
  throw std::invalid_argument("bad feedback kind: " + s);
}

ConditionLabel condition_from_name(const std::string& s) {
  if (s == "I") return ConditionLabel::I;
  if (s == "II") return ConditionLabel::II;
  if (s == "III") return ConditionLabel::III;
  if (s == "IV") return ConditionLabel::IV;
  if (s == "V") return ConditionLabel::V;
  throw std::invalid_argument("bad condition label: " + s);
}

Json user_json(UserId u) { return u == UserId::A ? "a" : "b"; }

UserId user_from_json(const Json& j) {
  std::string s = j.get<std::string>();
  if (s == "a") return UserId::A;
  if (s == "b") return UserId::B;
  throw std::invalid_argument("bad user id: " + s);
}

Json refs_json(const std::vector<SignalRef>& refs) {
  Json arr = Json::array();
  for (const SignalRef& r : refs)
    arr.push_back({{"rx", user_json(r.rx)}, {"slot", r.slot}, {"antenna", r.antenna}});
  return arr;
}

std::vector<SignalRef> refs_from_json(const Json& j) {
  std::vector<SignalRef> refs;
  for (const Json& e : j)
    refs.push_back({user_from_json(e.at("rx")), e.at("slot").get<int>(),
                    e.at("antenna").get<int>()});
  return refs;
}

Json rule_json(const TransmitRule& r) {
  return Json{{"kind", kind_name(r.kind)},     {"combine_a", r.combine_a},
              {"combine_b", r.combine_b},      {"active_rows", r.active_rows},
              {"sources", refs_json(r.sources)}, {"sources2", refs_json(r.sources2)},
              {"scale", r.scale}};
}

TransmitRule rule_from_json(const Json& j) {
  TransmitRule r;
  r.kind = kind_from_name(j.at("kind").get<std::string>());
  r.combine_a = j.at("combine_a").get<bool>();
  r.combine_b = j.at("combine_b").get<bool>();
  r.active_rows = j.at("active_rows").get<int>();
  r.sources = refs_from_json(j.at("sources"));
  r.sources2 = refs_from_json(j.at("sources2"));
  r.scale = j.at("scale").get<double>();
  return r;
}

Json noise_json(const NoiseSpec& n) {
  return Json{{"enabled", n.enabled}, {"snr_db", n.snr_db}};
}

NoiseSpec noise_from_json(const Json& j) {
  NoiseSpec n;
  n.enabled = j.at("enabled").get<bool>();
  n.snr_db = j.at("snr_db").get<double>();
  return n;
}

}  // namespace

Json vector_json(const ComplexVector& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back({v(i).real(), v(i).imag()});
  return arr;
}

ComplexVector vector_from_json(const Json& j) {
  ComplexVector v(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    v(static_cast<int>(i)) = Complex(j[i][0].get<double>(), j[i][1].get<double>());
  return v;
}

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  const int rows = static_cast<int>(j.size());
  const int cols = rows > 0 ? static_cast<int>(j[0].size()) : 0;
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k)
      m(i, k) = Complex(j[i][k][0].get<double>(), j[i][k][1].get<double>());
  return m;
}

Json config_json(const AntennaConfig& c) {
  return Json{{"tx", c.tx}, {"relay", c.relay}, {"rx", c.rx}};
}

AntennaConfig config_from_json(const Json& j) {
  return {j.at("tx").get<int>(), j.at("relay").get<int>(), j.at("rx").get<int>()};
}

Json mode_json(const FeedbackMode& m) {
  return Json{{"kind", to_string(m.kind)}, {"relay_feedback", m.relay_has_feedback}};
}

FeedbackMode mode_from_json(const Json& j) {
  return {feedback_from_name(j.at("kind").get<std::string>()),
          j.at("relay_feedback").get<bool>()};
}

Json channel_json(const ChannelSequence& seq) {
  Json slots = Json::array();
  for (const SlotChannels& s : seq.slots)
    slots.push_back({{"h_aa", matrix_json(s.h_aa)}, {"h_ab", matrix_json(s.h_ab)},
                     {"h_ac", matrix_json(s.h_ac)}, {"h_ba", matrix_json(s.h_ba)},
                     {"h_bb", matrix_json(s.h_bb)}, {"h_bc", matrix_json(s.h_bc)}});
  return Json{{"config", config_json(seq.config)}, {"slots", slots}};
}

ChannelSequence channel_from_json(const Json& j) {
  ChannelSequence seq;
  seq.config = config_from_json(j.at("config"));
  for (const Json& e : j.at("slots")) {
    SlotChannels s;
    s.h_aa = matrix_from_json(e.at("h_aa"));
    s.h_ab = matrix_from_json(e.at("h_ab"));
    s.h_ac = matrix_from_json(e.at("h_ac"));
    s.h_ba = matrix_from_json(e.at("h_ba"));
    s.h_bb = matrix_from_json(e.at("h_bb"));
    s.h_bc = matrix_from_json(e.at("h_bc"));
    seq.slots.push_back(std::move(s));
  }
  return seq;
}

Json plan_json(const SchemePlan& p) {
  Json slots = Json::array();
  for (const SlotPlan& sp : p.slots)
    slots.push_back({{"tx_a", rule_json(sp.tx_a)},
                     {"tx_b", rule_json(sp.tx_b)},
                     {"relay", rule_json(sp.relay)},
                     {"fresh_offset_a", sp.fresh_offset_a},
                     {"fresh_count_a", sp.fresh_count_a},
                     {"fresh_offset_b", sp.fresh_offset_b},
                     {"fresh_count_b", sp.fresh_count_b}});
  return Json{{"config", config_json(p.config)},
              {"mode", mode_json(p.mode)},
              {"condition", to_string(p.condition)},
              {"frame_length", p.frame_length},
              {"symbols_per_user", p.symbols_per_user},
              {"joint_decode", p.joint_decode},
              {"slots", slots}};
}

SchemePlan plan_from_json(const Json& j) {
  SchemePlan p;
  p.config = config_from_json(j.at("config"));
  p.mode = mode_from_json(j.at("mode"));
  p.condition = condition_from_name(j.at("condition").get<std::string>());
  p.frame_length = j.at("frame_length").get<int>();
  p.symbols_per_user = j.at("symbols_per_user").get<int>();
  p.joint_decode = j.at("joint_decode").get<bool>();
  for (const Json& e : j.at("slots")) {
    SlotPlan sp;
    sp.tx_a = rule_from_json(e.at("tx_a"));
    sp.tx_b = rule_from_json(e.at("tx_b"));
    sp.relay = rule_from_json(e.at("relay"));
    sp.fresh_offset_a = e.at("fresh_offset_a").get<int>();
    sp.fresh_count_a = e.at("fresh_count_a").get<int>();
    sp.fresh_offset_b = e.at("fresh_offset_b").get<int>();
    sp.fresh_count_b = e.at("fresh_count_b").get<int>();
    p.slots.push_back(std::move(sp));
  }
  return p;
}

Json transcript_json(const Transcript& t) {
  Json precoders = Json::array();
  for (const SlotPrecoders& p : t.precoders)
    precoders.push_back({{"tx_a", matrix_json(p.tx_a)},
                         {"tx_b", matrix_json(p.tx_b)},
                         {"relay", matrix_json(p.relay)}});
  Json slots = Json::array();
  for (const SlotSignals& s : t.slots)
    slots.push_back({{"x_a", vector_json(s.x_a)}, {"x_b", vector_json(s.x_b)},
                     {"x_c", vector_json(s.x_c)}, {"y_a", vector_json(s.y_a)},
                     {"y_b", vector_json(s.y_b)}, {"z_a", vector_json(s.z_a)},
                     {"z_b", vector_json(s.z_b)}});
  return Json{{"plan", plan_json(t.plan)},
              {"channel", channel_json(t.channel)},
              {"noise", noise_json(t.noise)},
              {"symbols_a", vector_json(t.symbols_a)},
              {"symbols_b", vector_json(t.symbols_b)},
              {"precoders", precoders},
              {"slots", slots}};
}

Transcript transcript_from_json(const Json& j) {
  Transcript t;
  t.plan = plan_from_json(j.at("plan"));
  t.channel = channel_from_json(j.at("channel"));
  t.noise = noise_from_json(j.at("noise"));
  t.symbols_a = vector_from_json(j.at("symbols_a"));
  t.symbols_b = vector_from_json(j.at("symbols_b"));
  for (const Json& e : j.at("precoders"))
    t.precoders.push_back({matrix_from_json(e.at("tx_a")), matrix_from_json(e.at("tx_b")),
                           matrix_from_json(e.at("relay"))});
  for (const Json& e : j.at("slots")) {
    SlotSignals s;
    s.x_a = vector_from_json(e.at("x_a"));
    s.x_b = vector_from_json(e.at("x_b"));
    s.x_c = vector_from_json(e.at("x_c"));
    s.y_a = vector_from_json(e.at("y_a"));
    s.y_b = vector_from_json(e.at("y_b"));
    s.z_a = vector_from_json(e.at("z_a"));
    s.z_b = vector_from_json(e.at("z_b"));
    t.slots.push_back(std::move(s));
  }
  return t;
}

Json decode_report_json(const DecodeReport& r) {
  return Json{{"decodable", r.decodable},
              {"degenerate", r.degenerate},
              {"rank", r.rank},
              {"condition_number", r.condition_number},
              {"max_symbol_error", r.max_symbol_error},
              {"cancellation_residual", r.cancellation_residual},
              {"symbol_estimates", vector_json(r.symbol_estimates)}};
}

Json region_json(const Polytope2D& p) {
  Json hs = Json::array(), hs_f = Json::array();
  for (const Halfspace& h : p.halfspaces()) {
    hs.push_back({rat_json(h.a), rat_json(h.b), rat_json(h.c)});
    hs_f.push_back({rat_float(h.a), rat_float(h.b), rat_float(h.c)});
  }
  Json vs = Json::array(), vs_f = Json::array();
  for (const RatPoint& v : p.vertices()) {
    vs.push_back({rat_json(v.x), rat_json(v.y)});
    vs_f.push_back({rat_float(v.x), rat_float(v.y)});
  }
  Rational single = p.max_weighted(1, 0);
  Rational sum = p.max_weighted(1, 1);
  Rational sym = p.diagonal_max();
  return Json{{"halfspaces", hs},
              {"halfspaces_float", hs_f},
              {"vertices", vs},
              {"vertices_float", vs_f},
              {"max_single", rat_json(single)},
              {"max_single_float", rat_float(single)},
              {"max_sum", rat_json(sum)},
              {"max_sum_float", rat_float(sum)},
              {"symmetric", rat_json(sym)},
              {"symmetric_float", rat_float(sym)}};
}

Json batch_json(const BatchStats& s) {
  return Json{{"config", config_json(s.config)},
              {"mode", to_string(s.mode)},
              {"condition", to_string(s.condition)},
              {"frame_length", s.frame_length},
              {"symbols_per_user", s.symbols_per_user},
              {"trials", s.trials},
              {"decodable_count", s.decodable_count},
              {"filtered_count", s.filtered_count},
              {"degenerate_count", s.degenerate_count},
              {"decodable_fraction", s.decodable_fraction},
              {"filtered_fraction", s.filtered_fraction},
              {"median_condition_number", s.median_condition_number},
              {"max_symbol_error_p99", s.max_symbol_error_p99},
              {"max_cancellation_residual", s.max_cancellation_residual}};
}

std::string batch_csv(const BatchStats& s) {
  std::ostringstream out;
  out << "config,mode,condition,trials,decodable_fraction,filtered_fraction,"
         "median_condition_number,max_symbol_error_p99\n";
  out << to_string(s.config) << ',' << to_string(s.mode) << ',' << to_string(s.condition) << ','
      << s.trials << ',' << csv_num(s.decodable_fraction) << ',' << csv_num(s.filtered_fraction)
      << ',' << csv_num(s.median_condition_number) << ',' << csv_num(s.max_symbol_error_p99)
      << '\n';
  return out.str();
}

Json sum_dof_json(const AntennaConfig& c, const SumDofRow& row) {
  Json j{{"config", config_json(c)},
         {"regime", row.regime},
         {"broadcast", rat_json(row.broadcast)},
         {"broadcast_float", rat_float(row.broadcast)},
         {"with_relay", rat_json(row.with_relay)},
         {"with_relay_float", rat_float(row.with_relay)}};
  if (row.without_relay) {
    j["without_relay"] = rat_json(*row.without_relay);
    j["without_relay_float"] = rat_float(*row.without_relay);
  } else {
    j["without_relay"] = nullptr;
    j["without_relay_float"] = nullptr;
  }
  return j;
}

std::string sum_dof_csv(const AntennaConfig& c, const SumDofRow& row) {
  std::ostringstream out;
  out << "mt,mc,mr,regime,broadcast,with_relay,without_relay\n";
  out << c.tx << ',' << c.relay << ',' << c.rx << ',' << row.regime << ','
      << to_string(row.broadcast) << ',' << to_string(row.with_relay) << ','
      << (row.without_relay ? to_string(*row.without_relay) : std::string()) << '\n';
  return out.str();
}

Json sweep_json(const SweepResult& r) {
  Json pts = Json::array();
  for (const SweepPoint& p : r.points) {
    Json e{{"snr_db", p.snr_db},
           {"mean_sum_rate", p.mean_sum_rate},
           {"ci_half_width", p.ci_half_width}};
    if (std::isnan(p.slope))
      e["slope"] = nullptr;
    else
      e["slope"] = p.slope;
    pts.push_back(e);
  }
  Json j{{"config", config_json(r.config)},
         {"mode", to_string(r.mode)},
         {"frame_length", r.frame_length},
         {"symbols_per_user", r.symbols_per_user},
         {"points", pts},
         {"exact_sum_dof", rat_json(r.exact_sum_dof)},
         {"exact_sum_dof_float", rat_float(r.exact_sum_dof)},
         {"trials_used", r.trials_used},
         {"trials_excluded", r.trials_excluded}};
  if (std::isnan(r.dof_estimate))
    j["dof_estimate"] = nullptr;
  else
    j["dof_estimate"] = r.dof_estimate;
  return j;
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream out;
  out << "config,mode,snr_db,mean_sum_rate,ci_half_width,slope\n";
  for (const SweepPoint& p : r.points)
    out << to_string(r.config) << ',' << to_string(r.mode) << ',' << csv_num(p.snr_db) << ','
        << csv_num(p.mean_sum_rate) << ',' << csv_num(p.ci_half_width) << ','
        << csv_num(p.slope) << '\n';
  return out.str();
}

Json cognitive_json(int tx, int cognitive_tx, int rx, const CognitiveIcBounds& b) {
  return Json{{"tx", tx},
              {"cognitive_tx", cognitive_tx},
              {"rx", rx},
              {"lower", region_json(b.lower)},
              {"upper", region_json(b.upper)}};
}

}  // namespace iccr
