#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <vector>

#include "iccr/montecarlo.hpp"
#include "iccr/regions.hpp"
#include "iccr/serialize.hpp"

namespace py = pybind11;
using namespace iccr;

namespace {

// results cross the boundary as plain dicts/lists built from the JSON layer
py::object to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const Json& e : j) out.append(to_py(e));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

AntennaConfig make_config(int mt, int mc, int mr) { return {mt, mc, mr}; }

FeedbackMode make_mode(const std::string& mode, bool relay_feedback) {
  FeedbackMode m;
  if (mode == "csit") m.kind = FeedbackKind::DelayedCsit;
  else if (mode == "output") m.kind = FeedbackKind::DelayedOutput;
  else if (mode == "shannon") m.kind = FeedbackKind::DelayedShannon;
  else if (mode == "none") m.kind = FeedbackKind::NoFeedback;
  else throw std::invalid_argument("mode must be csit, output, shannon or none");
  m.relay_has_feedback = m.kind != FeedbackKind::NoFeedback && relay_feedback;
  return m;
}

Polytope2D region_by_name(const AntennaConfig& cfg, const std::string& regime) {
  if (regime == "csi") return region_csi(cfg);
  if (regime == "output") return region_output(cfg);
  if (regime == "shannon") return region_shannon(cfg);
  if (regime == "outer") return region_outer_delayed(cfg);
  if (regime == "no") return region_no(cfg);
  if (regime == "no-cr-feedback") return region_no_cr_feedback(cfg);
  if (regime == "perfect") {
    if (!(cfg == AntennaConfig{1, 1, 1}))
      throw std::invalid_argument("perfect regime is only defined for 1x1x1");
    return region_perfect_siso();
  }
  throw std::invalid_argument("unknown regime: " + regime);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "DoF regions and scheme simulation for the two-user interference "
            "channel with a cognitive relay under delayed feedback";

  m.def(
      "classify",
      [](int mt, int mc, int mr) { return to_string(classify_condition(make_config(mt, mc, mr))); },
      py::arg("mt"), py::arg("mc"), py::arg("mr"),
      "Antenna-regime label (\"I\"..\"V\") selecting the transmission scheme");

  m.def(
      "region",
      [](int mt, int mc, int mr, const std::string& regime) {
        AntennaConfig cfg = make_config(mt, mc, mr);
        Json j = region_json(region_by_name(cfg, regime));
        j["config"] = config_json(cfg);
        j["regime"] = regime;
        return to_py(j);
      },
      py::arg("mt"), py::arg("mc"), py::arg("mr"), py::arg("regime") = "csi",
      "Exact DoF region: halfspaces, vertices and maxima as p/q strings plus floats");

  m.def(
      "scheme_summary",
      [](int mt, int mc, int mr, const std::string& mode, bool relay_feedback) {
        return to_py(plan_json(build_scheme(make_config(mt, mc, mr), make_mode(mode, relay_feedback))));
      },
      py::arg("mt"), py::arg("mc"), py::arg("mr"), py::arg("mode") = "csit",
      py::arg("relay_feedback") = true, "Slot-by-slot layout of the selected scheme");

  m.def(
      "simulate",
      [](int mt, int mc, int mr, const std::string& mode, bool relay_feedback, int trials,
         std::uint64_t seed, std::optional<double> snr_db) {
        TrialBatchSpec spec;
        spec.config = make_config(mt, mc, mr);
        spec.mode = make_mode(mode, relay_feedback);
        spec.trials = trials;
        spec.base_seed = seed;
        if (snr_db) spec.noise = NoiseSpec{true, *snr_db};
        return to_py(batch_json(run_batch(spec)));
      },
      py::arg("mt"), py::arg("mc"), py::arg("mr"), py::arg("mode") = "csit",
      py::arg("relay_feedback") = true, py::arg("trials") = 100, py::arg("seed") = 1,
      py::arg("snr_db") = std::nullopt, "Seeded decodability statistics for the scheme");

  m.def(
      "sweep",
      [](int mt, int mc, int mr, const std::string& mode, bool relay_feedback, int trials,
         std::uint64_t seed, std::vector<double> snr_db) {
        TrialBatchSpec spec;
        spec.config = make_config(mt, mc, mr);
        spec.mode = make_mode(mode, relay_feedback);
        spec.trials = trials;
        spec.base_seed = seed;
        return to_py(sweep_json(estimate_dof_sweep(spec, std::move(snr_db))));
      },
      py::arg("mt"), py::arg("mc"), py::arg("mr"), py::arg("mode") = "csit",
      py::arg("relay_feedback") = true, py::arg("trials") = 500, py::arg("seed") = 1,
      py::arg("snr_db") = std::vector<double>{},
      "Finite-SNR rate sweep; the high-SNR slope estimates the sum DoF");

  m.def(
      "table2",
      [](int mt, int mc, int mr) {
        AntennaConfig cfg = make_config(mt, mc, mr);
        return to_py(sum_dof_json(cfg, sum_dof_comparison(cfg)));
      },
      py::arg("mt"), py::arg("mc"), py::arg("mr"),
      "Sum-DoF comparison row: broadcast / with relay / without relay");

  m.def(
      "cognitive_ic",
      [](int mt, int mcog, int mr) {
        return to_py(cognitive_json(mt, mcog, mr, cognitive_ic_bounds(mt, mcog, mr)));
      },
      py::arg("mt"), py::arg("mcog"), py::arg("mr"),
      "Lower/upper DoF regions for the cognitive interference channel");
}
