#include "thermsynth/bestest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "thermsynth/error.hpp"
#include "thermsynth/orchestrator.hpp"

namespace thermsynth {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& bestest_documents();
}

namespace {

struct Reference {
	const char* metric;
	const char* unit;
	double min, max;
};

std::vector<Reference> references(std::string_view name)
{
	if (name == "TC600")
		return {{"annual heating", "MWh", 4.298, 5.709}, {"annual cooling", "MWh", 6.137, 7.964}};
	if (name == "TC900")
		return {{"annual heating", "MWh", 1.17, 1.988}, {"annual cooling", "MWh", 2.132, 3.415}};
	if (name == "TC600FF")
		return {{"mean temperature", "degC", 24.6, 25.9},
		        {"minimum temperature", "degC", -18.8, -15.6},
		        {"maximum temperature", "degC", 64.9, 69.5}};
	if (name == "TC900FF")
		return {{"mean temperature", "degC", 24.6, 25.9},
		        {"minimum temperature", "degC", -4.5, -1.6},
		        {"maximum temperature", "degC", 41.8, 44.8}};
	throw Error(ErrorCode::ConfigError, "unknown test case '" + std::string(name) + "'");
}

} // namespace

bool BestestResult::pass() const
{
	return !metrics.empty() && std::all_of(metrics.begin(), metrics.end(), [](const auto& m) { return m.pass(); });
}

const std::vector<std::string>& bestest_cases()
{
	static const std::vector<std::string> cases = {"TC600", "TC600FF", "TC900", "TC900FF"};
	return cases;
}

std::string_view bestest_config(std::string_view case_name)
{
	for (const auto& [name, text] : detail::bestest_documents())
		if (name == case_name)
			return text;
	throw Error(ErrorCode::ConfigError, "unknown test case '" + std::string(case_name) + "'");
}

FreeFloatStats hourly_temperature_stats(const std::vector<double>& time, const std::vector<double>& t_air)
{
	if (time.size() < 2 || time.size() != t_air.size())
		throw Error(ErrorCode::InvalidParameter, "need at least two samples");
	const double dt = time[1] - time[0];
	const auto per_hour = static_cast<std::size_t>(std::llround(3600.0 / dt));
	if (per_hour == 0 || std::abs(per_hour * dt - 3600.0) > 1e-6)
		throw Error(ErrorCode::InvalidParameter, "sample interval must divide one hour");

	FreeFloatStats s;
	s.min = std::numeric_limits<double>::infinity();
	s.max = -s.min;
	const std::size_t hours = (time.size() - 1) / per_hour;
	double sum = 0.0;
	for (std::size_t h = 0; h < hours; ++h) {
		double acc = 0.0;
		for (std::size_t k = h * per_hour; k < (h + 1) * per_hour; ++k)
			acc += 0.5 * (t_air[k] + t_air[k + 1]);
		const double mean = acc / static_cast<double>(per_hour);
		sum += mean;
		s.min = std::min(s.min, mean);
		s.max = std::max(s.max, mean);
	}
	s.mean = sum / static_cast<double>(hours);
	return s;
}

BestestResult run_bestest(std::string_view case_name, const std::filesystem::path& weather)
{
	const auto refs = references(case_name);
	const auto t0 = std::chrono::steady_clock::now();

	ConfigDocument doc = parse_config(Json::parse(bestest_config(case_name)));
	doc.weather.path = weather;
	auto plans = plan_runs(doc);
	WeatherCache cache;
	const SimOutput out = simulate(plans.front(), cache);

	BestestResult r;
	r.case_name = case_name;
	std::vector<double> values;
	if (refs.size() == 2) {
		values = {out.energy.heating / 3.6e9, out.energy.cooling / 3.6e9};
	} else {
		const auto stats = hourly_temperature_stats(out.column(Column::Time), out.column(Column::TAir));
		values = {stats.mean, stats.min, stats.max};
	}
	for (std::size_t i = 0; i < refs.size(); ++i)
		r.metrics.push_back({refs[i].metric, refs[i].unit, values[i], refs[i].min, refs[i].max});
	r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	return r;
}

} // namespace thermsynth
