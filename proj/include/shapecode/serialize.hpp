#pragma once

#include <string>

#include <json.hpp>

#include "shapecode/metrics.hpp"
#include "shapecode/model.hpp"
#include "shapecode/optimizer.hpp"
#include "shapecode/pipeline.hpp"

namespace shapecode {

nlohmann::json to_json(const ShapingSolution& s);
nlohmann::json to_json(const OptimalExpansion& o);
nlohmann::json to_json(const MetricsReport& r);
nlohmann::json to_json(const PipelineReport& r);
nlohmann::json to_json(const CodeBook& b);

CodeBook codebook_from_json(const nlohmann::json& j);

} // namespace shapecode
