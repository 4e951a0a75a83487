#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "owlet/entropy.hpp"
#include "owlet/metric.hpp"

namespace owlet::report {

inline constexpr int kSchemaVersion = 1;

using json = nlohmann::json;

json to_json(const entropy::OWEstimate& e);
json to_json(const entropy::EntropyReport& r);
json to_json(const entropy::CrossCheckReport& r);
json to_json(const entropy::TransferReport& r);
json to_json(const entropy::ChainReport& r);
json to_json(const entropy::PowerRuleReport& r);
json to_json(const entropy::ProductExtensionReport& r);
json to_json(const entropy::BernoulliReport& r);
json to_json(const cps::DensityTrace& t);
json to_json(const cps::MeyerReport& r);
json to_json(const groups::VanHoveDiagnostic& d);

/// Wraps a body in {schemaVersion, command, ...body} and dumps it (2-space
/// indent, trailing newline). Deterministic for identical inputs.
std::string envelope(const std::string& command, json body);

// one row per (scale, index)
std::string to_csv(const entropy::EntropyReport& r);
std::string to_csv(const cps::DensityTrace& t);
std::string to_csv(const groups::VanHoveDiagnostic& d);

// self-contained single-file line plots of the traces (ratio against index)
std::string to_svg(const entropy::EntropyReport& r);
std::string to_svg(const cps::DensityTrace& t);

/// Point list with `# key: value` header lines, one exact coordinate per row.
std::string points_csv(const std::vector<Quad5>& points,
                       const std::vector<std::pair<std::string, std::string>>& metadata);

}  // namespace owlet::report
