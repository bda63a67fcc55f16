#include <cmath>
#include <numeric>

#include "thermsynth/converter.hpp"
#include "thermsynth/error.hpp"

namespace thermsynth {

ZoneGeometry zone_dimensions(const GeometryInput& in)
{
	const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
	if (!positive(in.length) || !positive(in.width) || !positive(in.n_floors) || !positive(in.floor_height))
		throw Error(ErrorCode::InvalidGeometry, "zone dimensions must be positive");
	for (double f : in.window_fraction)
		if (!std::isfinite(f) || f < 0.0)
			throw Error(ErrorCode::InvalidGeometry, "window fractions must be non-negative");

	ZoneGeometry g;
	const double storey = in.n_floors * in.floor_height;
	g.floor_area = in.length * in.width;
	// North and south facades span the east-west length.
	const std::array<double, 4> facade = {in.length, in.width, in.length, in.width};
	double gross = 0.0;
	for (std::size_t o = 0; o < 4; ++o) {
		g.gross_wall_area[o] = storey * facade[o];
		g.window_area[o] = storey * facade[o] * in.window_fraction[o];
		gross += g.gross_wall_area[o];
	}
	const double windows = g.total_window_area();
	if (windows > gross)
		throw Error(ErrorCode::InvalidGeometry, "window area exceeds the gross wall area");
	g.wall_area = 2.0 * storey * (in.length + in.width) - windows;
	for (std::size_t o = 0; o < 4; ++o)
		g.net_wall_area[o] = std::max(0.0, g.gross_wall_area[o] - g.window_area[o]);
	g.roof_area = g.floor_area * in.roof_to_floor;
	g.interior_wall_area = g.wall_area * in.interior_to_exterior;
	g.volume = g.floor_area * storey;
	return g;
}

std::vector<double> distribution(const ParamValue& spec, std::size_t count)
{
	std::vector<double> v;
	if (const auto* name = std::get_if<std::string>(&spec)) {
		const bool r = count == 4;
		if (*name == "uniform")
			v = r ? std::vector<double>(4, 0.25) : std::vector<double>(3, 1.0 / 3.0);
		else if (*name == "mass-inside")
			v = r ? std::vector<double>{0.4, 0.3, 0.2, 0.1} : std::vector<double>{0.2, 0.3, 0.5};
		else if (*name == "mass-outside")
			v = r ? std::vector<double>{0.1, 0.2, 0.3, 0.4} : std::vector<double>{0.5, 0.3, 0.2};
		else
			throw Error(ErrorCode::UnknownProfileName, "unknown distribution profile '" + *name + "'");
		if (count != 3 && count != 4)
			throw Error(ErrorCode::BadDistribution, "distributions have 3 or 4 entries");
		return v;
	}
	if (const auto* values = std::get_if<std::vector<double>>(&spec))
		v = *values;
	else
		throw Error(ErrorCode::BadDistribution, "distribution must be a profile name or a list of fractions");
	if (v.size() != count)
		throw Error(ErrorCode::BadDistribution,
		            "expected " + std::to_string(count) + " fractions, got " + std::to_string(v.size()));
	for (double x : v)
		if (!std::isfinite(x) || x <= 0.0)
			throw Error(ErrorCode::BadDistribution, "distribution fractions must be positive");
	const double sum = std::accumulate(v.begin(), v.end(), 0.0);
	if (std::abs(sum - 1.0) > 1e-9)
		throw Error(ErrorCode::BadDistribution, "distribution fractions sum to " + describe(sum) + ", not 1");
	return v;
}

RCComponent component_properties(double u_value, double areal_capacity, double area,
                                  const std::vector<double>& r_distribution, const std::vector<double>& c_distribution)
{
	const auto r = distribution(r_distribution, 4);
	const auto c = distribution(c_distribution, 3);
	if (!(u_value > 0.0) || !(area > 0.0) || !(areal_capacity > 0.0))
		throw Error(ErrorCode::InvalidParameter, "U-value, area and heat capacity must be positive");

	const double r_total = std::max(1.0 / u_value - physics::kInteriorFilmResistance -
	                                    physics::kExteriorFilmResistance,
	                                physics::kMinConstructionResistance);
	RCComponent comp;
	comp.area = area;
	for (std::size_t i = 0; i < 4; ++i)
		comp.resistances[i] = r[i] * r_total / area;
	for (std::size_t j = 0; j < 3; ++j)
		comp.capacities[j] = c[j] * areal_capacity * area;
	return comp;
}

double nominal_heating_power(double ua, double ventilation_conductance, double day_setpoint, double design_outdoor,
                             double safety)
{
	if (!(day_setpoint > design_outdoor))
		throw Error(ErrorCode::InvalidParameter, "day setpoint must exceed the design outdoor temperature");
	return safety * (ua + ventilation_conductance) * (day_setpoint - design_outdoor);
}

double nominal_cooling_power(double ua, double ventilation_conductance, double cooling_setpoint,
                             double design_outdoor, double safety, double solar_aperture)
{
	constexpr double kDesignIrradiance = 500.0; // W/m2
	const double dT = std::max(0.0, design_outdoor - cooling_setpoint);
	return safety * ((ua + ventilation_conductance) * dT + solar_aperture * kDesignIrradiance);
}

} // namespace thermsynth
