#include "thermsynth/converter.hpp"
#include "thermsynth/detail/text.hpp"
#include "thermsynth/error.hpp"

namespace thermsynth {

std::string describe(const ParamValue& value)
{
	struct Visitor {
		std::string operator()(double d) const { return detail::format_double(d); }
		std::string operator()(bool b) const { return b ? "true" : "false"; }
		std::string operator()(const std::string& s) const { return s; }
		std::string operator()(const std::vector<double>& v) const
		{
			std::string out = "[";
			for (std::size_t i = 0; i < v.size(); ++i) {
				if (i)
					out += ", ";
				detail::append_double(out, v[i]);
			}
			return out + "]";
		}
	};
	return std::visit(Visitor{}, value);
}

const std::vector<WallProfile>& wall_profiles()
{
	static const std::vector<WallProfile> profiles = {
		{"High-hole brick (1980s)", 0.83, 250.0},
		{"Solid brick", 1.61, 376.0},
		{"Concrete + ETICS", 0.21, 470.0},
		{"Timber construction", 0.15, 75.0},
		{"High-hole brick (today)", 0.23, 265.0},
		{"Drywall", 0.56, 17.6},
	};
	return profiles;
}

const WallProfile& wall_profile(std::string_view name)
{
	for (const auto& p : wall_profiles())
		if (p.name == name)
			return p;
	throw Error(ErrorCode::UnknownProfileName, "unknown wall construction '" + std::string(name) + "'");
}

const std::vector<std::pair<std::string, ParamValue>>& parameter_defaults()
{
	using P = std::pair<std::string, ParamValue>;
	static const std::vector<P> defaults = {
		// Geometry
		P{"zone_length", 8.0},
		P{"zone_width", 8.0},
		P{"n_floors", 2.0},
		P{"floor_height", 2.5},
		P{"fAWin_south", 0.128},
		P{"fAWin_west", 0.128},
		P{"fAWin_north", 0.128},
		P{"fAWin_east", 0.128},
		P{"fATransToAWindow", 0.7},
		P{"fARoofToAFloor", 1.0},
		P{"fAInt", 1.0},
		// Envelope
		P{"UExt", 0.75},
		P{"UIntWall", 0.56},
		P{"UFloor", 0.5},
		P{"URoof", 0.3},
		P{"UWin", 1.9},
		P{"heatCapacity_wall", 250e3},
		P{"heatCapacity_intWall", 17.6e3},
		P{"heatCapacity_floor", 300e3},
		P{"heatCapacity_roof", 100e3},
		P{"heatCapacity_furniture_per_m2", 10e3},
		P{"thermalZone.gWin", 0.6},
		P{"#extWall_construction", std::string()},
		P{"#intWall_construction", std::string()},
		P{"#floor_construction", std::string()},
		P{"#roof_construction", std::string()},
		P{"extWall_R_distribution", std::string("uniform")},
		P{"extWall_C_distribution", std::string("uniform")},
		P{"intWall_R_distribution", std::string("uniform")},
		P{"intWall_C_distribution", std::string("uniform")},
		P{"floor_R_distribution", std::string("uniform")},
		P{"floor_C_distribution", std::string("uniform")},
		P{"roof_R_distribution", std::string("uniform")},
		P{"roof_C_distribution", std::string("uniform")},
		P{"solarAbsorptance", 0.6},
		// Inputs
		P{"weaDat.fileName", std::string()},
		P{"internalGain.fileName", std::string("archetype:CHR01")},
		P{"hygienicalWindowOpening.fileName", std::string("none")},
		P{"fAWinOpenable", 0.1},
		P{"windowOpeningHeight", 1.25},
		P{"groundTemperature", 10.0},
		P{"albedo", 0.2},
		P{"airDensity", physics::kDefaultAirDensity},
		// Ventilation
		P{"heatRecoveryRate", 0.0},
		P{"airChangeRate", 0.5},
		// Control
		P{"roomTempLowerSetpoint", 18.0},
		P{"roomTempUpperSetpoint", 22.0},
		P{"UseInternalController", true},
		P{"dayStartHour", 6.0},
		P{"dayEndHour", 22.0},
		P{"proportionalBand", 1.0},
		P{"controlInterval", 900.0},
		P{"useInternalCooling", false},
		P{"roomTempCoolingSetpoint", 26.0},
		P{"internalGainsConvectiveFraction", 0.5},
		P{"heatingConvectiveFraction", 0.7},
		// Heat pump
		P{"relative_heatPump_efficiency", 1.0},
		P{"heatingCurve_steepness", 0.6},
		P{"carnotQuality", 0.45},
		P{"copMin", 1.0},
		P{"copMax", 8.0},
		// Sizing; a positive nominal power overrides the calculation
		P{"designOutdoorTemperature", -12.0},
		P{"heatingSafetyFactor", 1.2},
		P{"designCoolingOutdoorTemperature", 32.0},
		P{"coolingSafetyFactor", 1.0},
		P{"nominalHeatingPower", 0.0},
		P{"nominalCoolingPower", 0.0},
	};
	return defaults;
}

const std::vector<std::pair<std::string, std::string>>& parameter_aliases()
{
	static const std::vector<std::pair<std::string, std::string>> aliases = {
		{"gWin", "thermalZone.gWin"},
		{"weather_file", "weaDat.fileName"},
		{"internal_gains_file", "internalGain.fileName"},
		{"window_opening_file", "hygienicalWindowOpening.fileName"},
		{"heatCapacity_extWall", "heatCapacity_wall"},
		{"UIntWalls", "UIntWall"},
		{"extWall_construction", "#extWall_construction"},
		{"intWall_construction", "#intWall_construction"},
		{"floor_construction", "#floor_construction"},
		{"roof_construction", "#roof_construction"},
		{"ext_R_distribution", "extWall_R_distribution"},
		{"ext_C_distribution", "extWall_C_distribution"},
		{"int_R_distribution", "intWall_R_distribution"},
		{"int_C_distribution", "intWall_C_distribution"},
		{"heatingCurveSteepness", "heatingCurve_steepness"},
		{"relativeHeatPumpEfficiency", "relative_heatPump_efficiency"},
	};
	return aliases;
}

} // namespace thermsynth
