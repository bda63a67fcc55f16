#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace thermsynth {

struct BestestMetric {
	std::string name;
	std::string unit;
	double value = 0.0;
	double min = 0.0; // reference range
	double max = 0.0;

	bool pass() const { return value >= min && value <= max; }
};

struct BestestResult {
	std::string case_name;
	std::vector<BestestMetric> metrics;
	double seconds = 0.0;

	bool pass() const;
};

// Bundled ASHRAE 140 cases: TC600, TC900 (annual loads) and TC600FF,
// TC900FF (free-float temperatures).
const std::vector<std::string>& bestest_cases();
std::string_view bestest_config(std::string_view case_name);

// Runs a case against a user-supplied Denver-area EPW file.
BestestResult run_bestest(std::string_view case_name, const std::filesystem::path& weather);

// Annual summaries: MWh for loads; hourly-mean air temperature statistics.
struct FreeFloatStats {
	double mean = 0.0;
	double min = 0.0;
	double max = 0.0;
};
FreeFloatStats hourly_temperature_stats(const std::vector<double>& time, const std::vector<double>& t_air);

} // namespace thermsynth
