#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "thermsynth/converter.hpp"
#include "thermsynth/simulator.hpp"
#include "thermsynth/weather.hpp"

namespace thermsynth {

using Json = nlohmann::ordered_json;

struct VariationSpec {
	enum class Mode { Cartesian, Zip };
	Mode mode = Mode::Cartesian;
	// Candidate values per parameter, in declaration order.
	std::vector<std::pair<std::string, std::vector<ParamValue>>> parameters;
};

struct OperationalChange {
	double at = 0.0; // s since start
	BuildingConfig changes;
	bool recalc_loads = false;
};

struct WeatherSource {
	std::filesystem::path path; // EPW; ignored when `constant` is set
	struct Constant {
		double dry_bulb = 0.0;
		double direct_normal = 0.0;
		double diffuse_horizontal = 0.0;
		std::size_t hours = 8760;
	};
	std::optional<Constant> constant;
	SiteLocation site; // for constant weather
};

struct ControllerConfig {
	enum class Type { Constant, TwoPoint };
	Type type = Type::Constant;
	double u_heat = 0.0; // Constant
	double u_cool = 0.0;
	double day_setpoint = 22.0; // TwoPoint
	double night_setpoint = 22.0;
	double hysteresis = 0.5;
	double day_start_hour = 6.0;
	double day_end_hour = 22.0;
};

struct SimulationConfig {
	std::optional<double> horizon; // s; unset: length of the weather year
	SimulationSettings settings;
	std::vector<Column> columns;
	std::uint64_t seed = 1;
	std::string batch_name = "batch";
	ControllerConfig external_controller;
};

struct ConfigDocument {
	BuildingConfig building;
	VariationSpec variations;
	std::vector<OperationalChange> schedules;
	SimulationConfig simulation;
	WeatherSource weather;
	std::filesystem::path base_dir; // relative paths resolve against this
};

ConfigDocument parse_config(const Json& document, const std::filesystem::path& base_dir = {});
ConfigDocument load_config(const std::filesystem::path& path);
std::vector<OperationalChange> parse_schedules(const Json& schedules);
std::vector<OperationalChange> load_schedules(const std::filesystem::path& path);
ParamValue param_from_json(const Json& value, const std::string& name);
Json param_to_json(const ParamValue& value);
std::vector<Column> default_columns();

std::vector<BuildingConfig> expand(const BuildingConfig& base, const VariationSpec& spec);
std::string content_hash(const BuildingConfig& config);
std::string run_id(std::size_t index, std::size_t total, const BuildingConfig& config);

struct RunPlan {
	std::string id;
	std::size_t index = 0;
	BuildingConfig building;
	std::vector<OperationalChange> schedules;
	WeatherSource weather;
	SimulationConfig simulation;
	std::filesystem::path base_dir;
};

std::vector<RunPlan> plan_runs(const ConfigDocument& document);

// Parses each weather file once and shares it between runs.
class WeatherCache {
public:
	std::shared_ptr<const WeatherSeries> get(const WeatherSource& source);

private:
	std::mutex mMutex;
	std::unordered_map<std::string, std::shared_ptr<const WeatherSeries>> mFiles;
};

struct SimOutput {
	std::vector<Column> columns;
	std::vector<Sample> rows;
	ResolvedModel initial_model;
	ResolvedModel final_model;
	EnergyTotals energy;
	Json schedule_log = Json::array();
	Json meta;

	std::string csv() const;
	std::vector<double> column(Column c) const;
};

// Runs a plan in memory.
SimOutput simulate(const RunPlan& plan, WeatherCache& weather);

struct RunResult {
	std::string id;
	bool ok = false;
	std::string error;
	double seconds = 0.0;
	std::filesystem::path directory;
};

struct BatchReport {
	std::vector<RunResult> runs; // in plan order
	double wall_seconds = 0.0;
	int workers = 1;

	std::size_t failures() const;
	double mean_run_seconds() const;
	Json to_json() const;
};

// Simulates one plan and writes data.csv and meta.json under `directory`.
RunResult run_one(const RunPlan& plan, const std::filesystem::path& directory, WeatherCache& weather);

// Writes <out>/<batch>/<run_id>/{data.csv, meta.json} and <out>/<batch>/report.json.
BatchReport run_batch(const std::vector<RunPlan>& plans, const std::filesystem::path& out_root, int workers);

} // namespace thermsynth
