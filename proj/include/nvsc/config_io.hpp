#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "nvsc/analysis.hpp"
#include "nvsc/engine.hpp"

namespace nvsc {

ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig config_from_json(const nlohmann::json& j);

nlohmann::ordered_json schedule_to_json(const DosSchedule& s);
DosSchedule schedule_from_json(const nlohmann::json& j, double grid_step);

void write_trace_csv(const SimTrace& trace, const std::filesystem::path& path);
SimTrace read_trace_csv(const std::filesystem::path& path);

// Deterministic analysis report; identical inputs give byte-identical JSON.
nlohmann::ordered_json make_report(const ScenarioConfig& cfg, const SimTrace& trace,
                                   const DosSchedule& schedule, const std::vector<Mat>& P,
                                   const std::vector<SystemMatrices>& matrices,
                                   const std::vector<std::string>& warnings);

void write_json(const nlohmann::ordered_json& j, const std::filesystem::path& path);

}  // namespace nvsc
