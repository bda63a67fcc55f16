#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thermsynth/model.hpp"

namespace thermsynth {

// User-facing building parameters keyed by name. Any value may instead be a
// link token "@link:<other parameter>".
using BuildingConfig = ParamMap;

constexpr std::string_view kLinkPrefix = "@link:";

struct WallProfile {
	std::string name;
	double u_value;       // W/(m2K)
	double heat_capacity; // kJ/(m2K)
};

const std::vector<WallProfile>& wall_profiles();
const WallProfile& wall_profile(std::string_view name);

// Every accepted parameter with its default, in documentation order.
const std::vector<std::pair<std::string, ParamValue>>& parameter_defaults();
// Alternative spellings accepted on input, mapped to canonical names.
const std::vector<std::pair<std::string, std::string>>& parameter_aliases();

struct GeometryInput {
	double length = 0.0; // east-west extent, m
	double width = 0.0;  // north-south extent, m
	double n_floors = 1.0;
	double floor_height = 0.0;
	std::array<double, 4> window_fraction{}; // N, E, S, W
	double roof_to_floor = 1.0;
	double interior_to_exterior = 1.0;
};

struct ZoneGeometry {
	double floor_area = 0.0;
	std::array<double, 4> gross_wall_area{}; // N, E, S, W
	std::array<double, 4> window_area{};
	std::array<double, 4> net_wall_area{};
	double wall_area = 0.0; // net exterior wall area, all orientations
	double roof_area = 0.0;
	double interior_wall_area = 0.0;
	double volume = 0.0;

	double total_window_area() const { return window_area[0] + window_area[1] + window_area[2] + window_area[3]; }
};

ZoneGeometry zone_dimensions(const GeometryInput& in);

// Named profile ("uniform", "mass-inside", "mass-outside") or explicit
// fractions; `count` is 4 for resistances and 3 for capacities.
std::vector<double> distribution(const ParamValue& spec, std::size_t count);

RCComponent component_properties(double u_value, double areal_capacity, double area,
                                  const std::vector<double>& r_distribution, const std::vector<double>& c_distribution);

// Steady-state sizing: safety * (UA + ventilation conductance) * design temperature difference.
double nominal_heating_power(double ua, double ventilation_conductance, double day_setpoint, double design_outdoor,
                             double safety);
double nominal_cooling_power(double ua, double ventilation_conductance, double cooling_setpoint,
                             double design_outdoor, double safety, double solar_aperture);

// Stage 1: replaces link tokens by their targets' values.
BuildingConfig resolve_links(const BuildingConfig& config);

// Runs the full converter pipeline.
ResolvedModel resolve(const BuildingConfig& config);

// Resolves like `resolve` but keeps the nominal powers of `previous` unless
// `recalc_loads` is set.
ResolvedModel resolve_update(const BuildingConfig& config, const ResolvedModel& previous, bool recalc_loads);

} // namespace thermsynth
