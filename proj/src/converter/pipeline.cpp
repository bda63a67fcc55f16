#include <algorithm>
#include <cmath>
#include <set>

#include "thermsynth/converter.hpp"
#include "thermsynth/error.hpp"

namespace thermsynth {

namespace {

bool is_link(const ParamValue& v)
{
	const auto* s = std::get_if<std::string>(&v);
	return s && s->starts_with(kLinkPrefix);
}

std::string link_target(const ParamValue& v) { return std::get<std::string>(v).substr(kLinkPrefix.size()); }

std::string canonical_name(const std::string& name)
{
	for (const auto& [alias, canonical] : parameter_aliases())
		if (alias == name)
			return canonical;
	return name;
}

const ParamValue* default_value(const std::string& canonical)
{
	for (const auto& [name, value] : parameter_defaults())
		if (name == canonical)
			return &value;
	return nullptr;
}

// Pipeline working set: canonical parameters plus an audit trail.
struct Working {
	ParamMap params;
	std::vector<std::string> corrections;

	double num(const std::string& name) const { return std::get<double>(params.at(name)); }
	bool flag(const std::string& name) const { return std::get<bool>(params.at(name)); }
	const std::string& text(const std::string& name) const { return std::get<std::string>(params.at(name)); }

	void correct(const std::string& name, double value, const std::string& why)
	{
		corrections.push_back(name + ": " + describe(params.at(name)) + " -> " + describe(value) + " (" + why + ")");
		params[name] = value;
	}
};

// Stage 2: name translation, defaults, type checks and construction profiles.
Working miscellaneous_handler(const BuildingConfig& linked)
{
	Working w;
	for (const auto& [name, value] : linked) {
		const std::string canonical = canonical_name(name);
		const ParamValue* def = default_value(canonical);
		if (!def)
			throw Error(ErrorCode::InvalidParameter, "unknown parameter '" + name + "'");
		if (w.params.count(canonical))
			throw Error(ErrorCode::InvalidParameter, "parameter '" + canonical + "' given more than once");

		ParamValue v = value;
		const bool is_distribution = canonical.ends_with("_distribution");
		if (is_distribution) {
			if (!std::holds_alternative<std::string>(v) && !std::holds_alternative<std::vector<double>>(v))
				throw Error(ErrorCode::InvalidParameter, "'" + name + "' must be a profile name or a list");
		} else if (std::holds_alternative<bool>(*def) && std::holds_alternative<double>(v)) {
			const double d = std::get<double>(v);
			if (d != 0.0 && d != 1.0)
				throw Error(ErrorCode::InvalidParameter, "'" + name + "' must be a boolean");
			v = d != 0.0;
		} else if (v.index() != def->index()) {
			throw Error(ErrorCode::InvalidParameter, "'" + name + "' has the wrong type");
		}
		if (const auto* d = std::get_if<double>(&v); d && !std::isfinite(*d))
			throw Error(ErrorCode::InvalidParameter, "'" + name + "' must be finite");
		w.params.emplace(canonical, std::move(v));
	}
	for (const auto& [name, value] : parameter_defaults())
		w.params.emplace(name, value);

	static const std::array<std::array<const char*, 3>, 4> constructions = {{
		{"#extWall_construction", "UExt", "heatCapacity_wall"},
		{"#intWall_construction", "UIntWall", "heatCapacity_intWall"},
		{"#floor_construction", "UFloor", "heatCapacity_floor"},
		{"#roof_construction", "URoof", "heatCapacity_roof"},
	}};
	for (const auto& [key, u, cap] : constructions) {
		const auto& name = w.text(key);
		if (name.empty())
			continue;
		const auto& profile = wall_profile(name);
		w.params[u] = profile.u_value;
		w.params[cap] = profile.heat_capacity * 1e3;
	}
	return w;
}

// Stage 3: nudges values that would make the model singular or inconsistent.
void compatibility_layer(Working& w)
{
	constexpr double kTiny = 1e-4;
	for (const char* name : {"fAInt", "fARoofToAFloor", "UExt", "UIntWall", "UFloor", "URoof", "UWin"})
		if (w.num(name) <= 0.0)
			w.correct(name, kTiny, "must be positive");
	for (const char* name : {"heatCapacity_wall", "heatCapacity_intWall", "heatCapacity_floor", "heatCapacity_roof"})
		if (w.num(name) < 100.0)
			w.correct(name, 100.0, "minimum areal capacity");
	if (w.num("heatCapacity_furniture_per_m2") < 0.0)
		w.correct("heatCapacity_furniture_per_m2", 0.0, "must be non-negative");
	for (const char* name : {"fAWin_south", "fAWin_west", "fAWin_north", "fAWin_east", "airChangeRate",
	                         "heatingCurve_steepness", "fAWinOpenable"})
		if (w.num(name) < 0.0)
			w.correct(name, 0.0, "must be non-negative");
	for (const char* name : {"thermalZone.gWin", "fATransToAWindow", "internalGainsConvectiveFraction",
	                         "heatingConvectiveFraction", "solarAbsorptance", "albedo", "fAWinOpenable"}) {
		const double v = w.num(name);
		if (v < 0.0 || v > 1.0)
			w.correct(name, std::clamp(v, 0.0, 1.0), "fraction outside [0, 1]");
	}
	const double hr = w.num("heatRecoveryRate");
	if (hr < 0.0 || hr > 0.99)
		w.correct("heatRecoveryRate", std::clamp(hr, 0.0, 0.99), "heat recovery outside [0, 0.99]");
	for (const char* name : {"relative_heatPump_efficiency", "carnotQuality", "proportionalBand", "airDensity",
	                         "windowOpeningHeight"})
		if (w.num(name) <= 0.0)
			w.correct(name, kTiny, "must be positive");
	if (w.num("copMin") < 1.0)
		w.correct("copMin", 1.0, "COP below 1");
	if (w.num("copMax") < w.num("copMin"))
		w.correct("copMax", w.num("copMin"), "upper COP bound below lower bound");
	if (w.num("roomTempLowerSetpoint") > w.num("roomTempUpperSetpoint"))
		w.correct("roomTempLowerSetpoint", w.num("roomTempUpperSetpoint"), "night setpoint above day setpoint");
	if (!(w.num("controlInterval") > 0.0))
		throw Error(ErrorCode::InvalidParameter, "controlInterval must be positive");
}

struct ComponentPlan {
	std::string name;
	SurfaceOrientation orientation;
	double area;
	const char* u;
	const char* capacity;
	const char* r_dist;
	const char* c_dist;
};

ResolvedModel run_pipeline(const BuildingConfig& config)
{
	// 1-3
	Working w = miscellaneous_handler(resolve_links(config));
	compatibility_layer(w);

	// 4. Zone dimensions
	GeometryInput gi;
	gi.length = w.num("zone_length");
	gi.width = w.num("zone_width");
	gi.n_floors = w.num("n_floors");
	gi.floor_height = w.num("floor_height");
	gi.window_fraction = {w.num("fAWin_north"), w.num("fAWin_east"), w.num("fAWin_south"), w.num("fAWin_west")};
	gi.roof_to_floor = w.num("fARoofToAFloor");
	gi.interior_to_exterior = w.num("fAInt");
	const ZoneGeometry geo = zone_dimensions(gi);

	// 5. Component configuration
	std::vector<ComponentPlan> plans = {
		{"extWall_north", SurfaceOrientation::North, geo.net_wall_area[0], "UExt", "heatCapacity_wall",
		 "extWall_R_distribution", "extWall_C_distribution"},
		{"extWall_east", SurfaceOrientation::East, geo.net_wall_area[1], "UExt", "heatCapacity_wall",
		 "extWall_R_distribution", "extWall_C_distribution"},
		{"extWall_south", SurfaceOrientation::South, geo.net_wall_area[2], "UExt", "heatCapacity_wall",
		 "extWall_R_distribution", "extWall_C_distribution"},
		{"extWall_west", SurfaceOrientation::West, geo.net_wall_area[3], "UExt", "heatCapacity_wall",
		 "extWall_R_distribution", "extWall_C_distribution"},
		{"roof", SurfaceOrientation::Horizontal, geo.roof_area, "URoof", "heatCapacity_roof", "roof_R_distribution",
		 "roof_C_distribution"},
		{"floor", SurfaceOrientation::Ground, geo.floor_area, "UFloor", "heatCapacity_floor", "floor_R_distribution",
		 "floor_C_distribution"},
		{"intWall", SurfaceOrientation::Internal, geo.interior_wall_area, "UIntWall", "heatCapacity_intWall",
		 "intWall_R_distribution", "intWall_C_distribution"},
	};
	constexpr double kMinArea = 1e-4;
	for (auto& p : plans) {
		if (p.area < kMinArea) {
			w.corrections.push_back(p.name + " area: " + describe(p.area) + " -> " + describe(kMinArea) +
			                        " (component area must be positive)");
			p.area = kMinArea;
		}
	}

	// 6. R/C distributions
	std::vector<std::pair<std::vector<double>, std::vector<double>>> dists;
	for (const auto& p : plans)
		dists.emplace_back(distribution(w.params.at(p.r_dist), 4), distribution(w.params.at(p.c_dist), 3));

	// 7. Component properties
	ResolvedModel m;
	const double absorptance = w.num("solarAbsorptance");
	for (std::size_t i = 0; i < plans.size(); ++i) {
		const auto& p = plans[i];
		const double u = w.num(p.u);
		if (1.0 / u - physics::kInteriorFilmResistance - physics::kExteriorFilmResistance <
		    physics::kMinConstructionResistance)
			w.corrections.push_back(p.name + " construction resistance clamped to " +
			                        describe(physics::kMinConstructionResistance));
		RCComponent c = component_properties(u, w.num(p.capacity), p.area, dists[i].first, dists[i].second);
		c.name = p.name;
		c.orientation = p.orientation;
		c.solar_absorptance = absorptance;
		m.components.push_back(std::move(c));
	}
	const double furniture = w.num("heatCapacity_furniture_per_m2") * geo.floor_area * gi.n_floors;
	for (std::size_t j = 0; j < 3; ++j)
		m.components.back().capacities[j] += dists.back().second[j] * furniture;

	m.windows.area = geo.window_area;
	m.windows.u_value = w.num("UWin");
	m.windows.g_value = w.num("thermalZone.gWin");
	m.windows.transparent_fraction = w.num("fATransToAWindow");
	m.windows.opening_height = w.num("windowOpeningHeight");
	m.windows.opening_area = w.num("fAWinOpenable") * geo.total_window_area();

	m.zone_volume = geo.volume;
	m.floor_area = geo.floor_area;
	m.air_density = w.num("airDensity");
	m.ground_temperature = w.num("groundTemperature");
	m.albedo = w.num("albedo");
	m.ventilation = {w.num("airChangeRate"), w.num("heatRecoveryRate"), geo.volume};
	m.heat_pump = {w.num("relative_heatPump_efficiency"), w.num("heatingCurve_steepness"), w.num("carnotQuality"),
	               w.num("copMin"), w.num("copMax")};
	auto& ctl = m.controller;
	ctl.mode = w.flag("UseInternalController") ? ControllerMode::InternalProportional : ControllerMode::External;
	ctl.day_setpoint = w.num("roomTempUpperSetpoint");
	ctl.night_setpoint = w.num("roomTempLowerSetpoint");
	ctl.day_start_hour = w.num("dayStartHour");
	ctl.day_end_hour = w.num("dayEndHour");
	ctl.proportional_band = w.num("proportionalBand");
	ctl.control_interval = w.num("controlInterval");
	ctl.cooling_enabled = w.flag("useInternalCooling");
	ctl.cooling_setpoint = w.num("roomTempCoolingSetpoint");
	m.splits = {w.num("heatingConvectiveFraction"), w.num("internalGainsConvectiveFraction")};

	// 8-9. Nominal powers
	double ua = m.windows.u_value * geo.total_window_area();
	for (std::size_t i = 0; i + 1 < plans.size(); ++i)
		ua += w.num(plans[i].u) * plans[i].area;
	const double vent = m.air_density * physics::kAirHeatCapacity * geo.volume * m.ventilation.air_change_rate /
	                    3600.0 * (1.0 - m.ventilation.heat_recovery_rate);
	m.nominal_heating_power = w.num("nominalHeatingPower") > 0.0
	                              ? w.num("nominalHeatingPower")
	                              : nominal_heating_power(ua, vent, ctl.day_setpoint, w.num("designOutdoorTemperature"),
	                                                      w.num("heatingSafetyFactor"));
	const double aperture = m.windows.g_value * m.windows.transparent_fraction * geo.total_window_area();
	m.nominal_cooling_power = w.num("nominalCoolingPower") > 0.0
	                              ? w.num("nominalCoolingPower")
	                              : nominal_cooling_power(ua, vent, ctl.cooling_setpoint,
	                                                      w.num("designCoolingOutdoorTemperature"),
	                                                      w.num("coolingSafetyFactor"), aperture);

	m.parameters = std::move(w.params);
	auto& out = m.parameters;
	out["A_floor"] = geo.floor_area;
	out["A_walls"] = geo.wall_area;
	out["A_roof"] = geo.roof_area;
	out["A_int"] = geo.interior_wall_area;
	out["A_win_north"] = geo.window_area[0];
	out["A_win_east"] = geo.window_area[1];
	out["A_win_south"] = geo.window_area[2];
	out["A_win_west"] = geo.window_area[3];
	out["zone_volume"] = geo.volume;
	out["UA_total"] = ua;
	out["nominal_heating_power"] = m.nominal_heating_power;
	out["nominal_cooling_power"] = m.nominal_cooling_power;
	m.corrections = std::move(w.corrections);
	return m;
}

} // namespace

BuildingConfig resolve_links(const BuildingConfig& config)
{
	BuildingConfig out;
	for (const auto& [name, value] : config) {
		ParamValue v = value;
		std::vector<std::string> chain = {name};
		std::set<std::string> seen = {name};
		while (is_link(v)) {
			const std::string target = link_target(v);
			if (seen.count(target)) {
				std::string path;
				for (const auto& c : chain)
					path += c + " -> ";
				throw Error(ErrorCode::UnresolvableLink, "link cycle: " + path + target);
			}
			chain.push_back(target);
			seen.insert(target);
			if (auto it = config.find(target); it != config.end())
				v = it->second;
			else if (const ParamValue* def = default_value(canonical_name(target)))
				v = *def;
			else
				throw Error(ErrorCode::UnresolvableLink, "'" + name + "' links to unknown parameter '" + target + "'");
		}
		out.emplace(name, std::move(v));
	}
	return out;
}

ResolvedModel resolve(const BuildingConfig& config) { return run_pipeline(config); }

ResolvedModel resolve_update(const BuildingConfig& config, const ResolvedModel& previous, bool recalc_loads)
{
	ResolvedModel m = run_pipeline(config);
	if (!recalc_loads) {
		m.nominal_heating_power = previous.nominal_heating_power;
		m.nominal_cooling_power = previous.nominal_cooling_power;
		m.parameters["nominal_heating_power"] = m.nominal_heating_power;
		m.parameters["nominal_cooling_power"] = m.nominal_cooling_power;
	}
	return m;
}

} // namespace thermsynth
