#pragma once

#include <array>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace thermsynth {

// A configuration value as it appears in a config document.
using ParamValue = std::variant<double, bool, std::string, std::vector<double>>;
using ParamMap = std::map<std::string, ParamValue>;

std::string describe(const ParamValue& value);

namespace physics {
constexpr double kAirHeatCapacity = 1005.0; // J/(kg K)
constexpr double kDefaultAirDensity = 1.2;  // kg/m3
constexpr double kGravity = 9.81;
constexpr double kKelvin = 273.15;

// Surface films folded into a configured U-value (m2K/W).
constexpr double kInteriorFilmResistance = 0.13;
constexpr double kExteriorFilmResistance = 0.04;

// Explicit film coefficients of the network (W/(m2K)).
constexpr double kExteriorFilm = 25.0;
constexpr double kInteriorConvective = 2.5;
constexpr double kInteriorRadiative = 5.2;

// Smallest construction resistance left after removing the films.
constexpr double kMinConstructionResistance = 1e-4;
} // namespace physics

enum class SurfaceOrientation { North, East, South, West, Horizontal, Ground, Internal };

std::string_view to_string(SurfaceOrientation o);

// Opaque component. The chain runs from the ambient side to the zone side:
// R1 - C1 - R2 - C2 - R3 - C3 - R4.
struct RCComponent {
	std::string name;
	double area = 0.0; // m2
	SurfaceOrientation orientation = SurfaceOrientation::Internal;
	std::array<double, 4> resistances{}; // K/W
	std::array<double, 3> capacities{};  // J/K
	double solar_absorptance = 0.6;
};

struct WindowGroup {
	std::array<double, 4> area{}; // m2, indexed N, E, S, W
	double u_value = 1.0;         // W/(m2K)
	double g_value = 0.6;
	double transparent_fraction = 0.7;
	double opening_height = 1.25; // m
	double opening_area = 0.0;    // m2 of a fully opened window

	double total_area() const { return area[0] + area[1] + area[2] + area[3]; }
};

struct VentilationSpec {
	double air_change_rate = 0.5;    // 1/h
	double heat_recovery_rate = 0.0; // [0, 1)
	double zone_volume = 0.0;        // m3
};

struct HeatPumpSpec {
	double relative_efficiency = 1.0;
	double heating_curve_steepness = 0.6;
	double carnot_quality = 0.45;
	double cop_min = 1.0;
	double cop_max = 8.0;
};

enum class ControllerMode { InternalProportional, External };

struct ControllerSpec {
	ControllerMode mode = ControllerMode::InternalProportional;
	double day_setpoint = 22.0;
	double night_setpoint = 18.0;
	double day_start_hour = 6.0;
	double day_end_hour = 22.0;
	double proportional_band = 1.0; // K
	double control_interval = 900.0; // s, external controllers only
	bool cooling_enabled = false;
	double cooling_setpoint = 26.0;

	double setpoint_at(double seconds_of_day) const;
};

struct SplitFractions {
	double heating_convective_fraction = 0.7;
	double internal_gains_convective_fraction = 0.5;
};

// Everything the thermal core needs, produced by the converter.
struct ResolvedModel {
	std::vector<RCComponent> components;
	WindowGroup windows;
	VentilationSpec ventilation;
	HeatPumpSpec heat_pump;
	ControllerSpec controller;
	SplitFractions splits;
	double nominal_heating_power = 0.0; // W
	double nominal_cooling_power = 0.0; // W
	double zone_volume = 0.0;           // m3
	double floor_area = 0.0;            // m2, ground floor footprint
	double air_density = physics::kDefaultAirDensity;
	double ground_temperature = 10.0;
	double albedo = 0.2;
	ParamMap parameters; // flat resolved parameter map for metadata
	std::vector<std::string> corrections; // compatibility-layer adjustments
};

} // namespace thermsynth
