#pragma once

#include <string>

#include <json.hpp>

#include "iccr/decoder.hpp"
#include "iccr/montecarlo.hpp"

namespace iccr {

using Json = nlohmann::json;

// Complex values serialize as [re, im]; matrices as arrays of rows.
Json vector_json(const ComplexVector&);
ComplexVector vector_from_json(const Json&);
Json matrix_json(const ComplexMatrix&);
ComplexMatrix matrix_from_json(const Json&);

Json config_json(const AntennaConfig&);
AntennaConfig config_from_json(const Json&);
Json mode_json(const FeedbackMode&);
FeedbackMode mode_from_json(const Json&);

Json channel_json(const ChannelSequence&);
ChannelSequence channel_from_json(const Json&);

Json plan_json(const SchemePlan&);
SchemePlan plan_from_json(const Json&);

// Full frame record; round-trips so a saved run can be re-decoded.
Json transcript_json(const Transcript&);
Transcript transcript_from_json(const Json&);

Json decode_report_json(const DecodeReport&);

// Geometry plus the headline maxima, rationals as "p/q" strings with
// float twins for plotting.
Json region_json(const Polytope2D&);

Json batch_json(const BatchStats&);
std::string batch_csv(const BatchStats&);

Json sum_dof_json(const AntennaConfig&, const SumDofRow&);
std::string sum_dof_csv(const AntennaConfig&, const SumDofRow&);

Json sweep_json(const SweepResult&);
std::string sweep_csv(const SweepResult&);

Json cognitive_json(int tx, int cognitive_tx, int rx, const CognitiveIcBounds&);

}  // namespace iccr
