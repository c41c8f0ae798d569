#pragma once

#include "brodyforge/curves.hpp"
#include "brodyforge/rescaling.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace brodyforge {

using json = nlohmann::ordered_json;

struct RescalingParams {
    cplx A{0.1, 0.2};
    cplx B{1.0, 0.0};
    double delta = 0.0;
    std::vector<int> j_list{8, 16, 32};
    GridSpec grid{};
};

// One curve scenario: everything needed to schedule, interpolate, assemble F,
// and run the rescaling diagnostics on it.
struct ScenarioConfig {
    CurveSpec::Variant variant = CurveSpec::Variant::plane;
    InnerCurve inner;
    MetricSpec metric;
    NodeSystem nodes;
    std::vector<cplx> p_targets;        // empty => default p_j = j
    RescalingParams rescaling;
    std::vector<double> witness_c_list; // defaulted per variant when absent
};

struct SequenceConfig {
    std::vector<double> c;
    std::string label;
};

// Strict parsers: unknown keys are rejected by name, all errors are
// Error(validation) with a path to the offending entry.
json load_json_file(const std::filesystem::path& path);
ScenarioConfig parse_scenario(const json& j);
NodeSystem parse_nodes(const json& j);
MetricSpec parse_metric(const json& j);
SequenceConfig parse_sequence_config(const json& j); // {sequence, N}
SequenceConfig make_sequence(const json& sequence, long long N);

json to_json(const NodeSystem& nodes);
json to_json(const MetricSpec& metric);
json to_json(const InnerCurve& inner);
json to_json(const HermiteInterpolant& interp);
json to_json(const CurveSpec& spec);
json complex_to_json(cplx z);

} // namespace brodyforge
