#pragma once

#include <string>

#include "json.hpp"
#include "qmeasure/audit.hpp"
#include "qmeasure/box.hpp"
#include "qmeasure/measurement.hpp"
#include "qmeasure/quantities.hpp"
#include "qmeasure/relations.hpp"

namespace qmeasure {

// Complex scalars are stored as [re, im] pairs; matrices as flat row-major
// lists of pairs with dimensions taken from the surrounding object.  JSON
// doubles use the shortest round-tripping decimal form, so values survive
// export/import exactly.
nlohmann::json model_to_json(const MeasurementModel& model);
MeasurementModel model_from_json(const nlohmann::json& j,
                                 const Tolerances& tol = Tolerances());

nlohmann::json box_state_to_json(const BoxState& state);
BoxState box_state_from_json(const nlohmann::json& j,
                             const Tolerances& tol = Tolerances());

nlohmann::json report_to_json(const RelationReport& report);
nlohmann::json quantity_set_to_json(const QuantitySet& q);
nlohmann::json suite_to_json(const SuiteResult& suite);
nlohmann::json bias_report_to_json(const BiasReport& report);
nlohmann::json certificate_to_json(const InconsistencyCertificate& cert);

// Throws std::invalid_argument on unreadable files or malformed JSON, so
// callers can map input problems to a validation failure uniformly.
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qmeasure
