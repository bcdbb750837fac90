#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "msl/model.hpp"

namespace msl {

// Instance wire format (all doubles round-trip losslessly):
// {
//   "variant": "standard" | "answer_first" | "moving_client",
//   "dimension": d,
//   "start": [c0, ...],
//   "m": move limit,
//   "D": move cost weight,
//   "m_a": agent limit,            // moving_client only
//   "batches": [ [ [c0, ...], ... ], ... ],
//   "meta": { ... }                // optional generator side-channel
// }

nlohmann::json point_to_json(const Point& p);
Point point_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json trace_to_json(const Trace& trace);

void save_instance(const Instance& inst, const std::string& path,
                   const nlohmann::json& meta = nlohmann::json());
/// Returns the instance and its meta object (null when absent).
std::pair<Instance, nlohmann::json> load_instance(const std::string& path);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace msl
