#include <cstdio>

#include "thermsynth/error.hpp"
#include "thermsynth/orchestrator.hpp"

namespace thermsynth {

std::vector<BuildingConfig> expand(const BuildingConfig& base, const VariationSpec& spec)
{
	const auto& params = spec.parameters;
	for (const auto& [name, values] : params)
		if (values.empty())
			throw Error(ErrorCode::EmptyVariationSet, "no values given for '" + name + "'");
	if (params.empty())
		return {base};

	std::vector<BuildingConfig> out;
	if (spec.mode == VariationSpec::Mode::Zip) {
		std::size_t n = 1;
		for (const auto& [name, values] : params) {
			if (values.size() == 1)
				continue;
			if (n != 1 && values.size() != n)
				throw Error(ErrorCode::ZipLengthMismatch, "zip lists differ in length ('" + name + "' has " +
				                                              std::to_string(values.size()) + ", expected " +
				                                              std::to_string(n) + ")");
			n = values.size();
		}
		for (std::size_t i = 0; i < n; ++i) {
			BuildingConfig c = base;
			for (const auto& [name, values] : params)
				c[name] = values.size() == 1 ? values[0] : values[i];
			out.push_back(std::move(c));
		}
		return out;
	}

	// Cartesian product; the first declared parameter varies slowest.
	std::size_t total = 1;
	for (const auto& [_, values] : params)
		total *= values.size();
	out.reserve(total);
	for (std::size_t index = 0; index < total; ++index) {
		BuildingConfig c = base;
		std::size_t rest = index;
		for (std::size_t p = params.size(); p-- > 0;) {
			const auto& values = params[p].second;
			c[params[p].first] = values[rest % values.size()];
			rest /= values.size();
		}
		out.push_back(std::move(c));
	}
	return out;
}

std::string content_hash(const BuildingConfig& config)
{
	Json j = Json::object();
	for (const auto& [k, v] : config)
		j[k] = param_to_json(v);
	const std::string text = j.dump();
	std::uint32_t h = 2166136261u;
	for (unsigned char c : text) {
		h ^= c;
		h *= 16777619u;
	}
	char buf[9];
	std::snprintf(buf, sizeof(buf), "%08x", h);
	return buf;
}

std::string run_id(std::size_t index, std::size_t total, const BuildingConfig& config)
{
	const std::size_t width = std::max<std::size_t>(4, std::to_string(total > 0 ? total - 1 : 0).size());
	std::string idx = std::to_string(index);
	if (idx.size() < width)
		idx.insert(0, width - idx.size(), '0');
	return idx + "_" + content_hash(config);
}

std::vector<RunPlan> plan_runs(const ConfigDocument& document)
{
	const auto configs = expand(document.building, document.variations);
	std::vector<RunPlan> plans;
	plans.reserve(configs.size());
	for (std::size_t i = 0; i < configs.size(); ++i) {
		RunPlan p;
		p.index = i;
		p.id = run_id(i, configs.size(), configs[i]);
		p.building = configs[i];
		p.schedules = document.schedules;
		p.weather = document.weather;
		p.simulation = document.simulation;
		p.base_dir = document.base_dir;
		plans.push_back(std::move(p));
	}
	return plans;
}

} // namespace thermsynth
