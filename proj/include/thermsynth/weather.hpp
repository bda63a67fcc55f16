#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <memory>
#include <string>
#include <vector>

namespace thermsynth {

constexpr double kWeatherStep = 3600.0;

struct SiteLocation {
	double latitude = 0.0;        // degrees, north positive
	double longitude = 0.0;       // degrees, east positive (EPW convention)
	double timezone_offset = 0.0; // hours from UTC of local standard time
};

// One EPW data row. `timestamp` is the start of the hour the row describes,
// in seconds since the start of the simulation year (row k -> k * 3600).
struct WeatherRecord {
	double timestamp = 0.0;
	double dry_bulb = 0.0;           // degC
	double direct_normal = 0.0;      // W/m2
	double diffuse_horizontal = 0.0; // W/m2
};

struct WeatherSeries {
	std::string city;
	SiteLocation site;
	std::vector<WeatherRecord> records;

	double duration() const { return static_cast<double>(records.size()) * kWeatherStep; }
};

// Parses an EnergyPlus weather file. Only dry-bulb, direct-normal and
// diffuse-horizontal irradiance are consumed; EPW missing-value sentinels
// are replaced by linear interpolation between the nearest valid rows.
WeatherSeries parse_epw(std::istream& source);
WeatherSeries load_epw(const std::filesystem::path& path);

// Constant weather, handy for tests and synthetic experiments.
WeatherSeries constant_weather(double dry_bulb, double direct_normal, double diffuse_horizontal,
                               SiteLocation site = {}, std::size_t hours = 8760);

enum class Orientation { North, East, South, West, Horizontal };
constexpr std::size_t kOrientationCount = 5;

constexpr double azimuth_of(Orientation o)
{
	switch (o) {
	case Orientation::North: return 0.0;
	case Orientation::East: return 90.0;
	case Orientation::South: return 180.0;
	case Orientation::West: return 270.0;
	default: return 0.0;
	}
}

struct SolarPosition {
	double altitude = 0.0; // degrees above horizon
	double azimuth = 0.0;  // degrees clockwise from north
};

// Standard declination / hour-angle formulation with equation-of-time
// correction. `time` is local standard time in seconds since Jan 1 00:00.
SolarPosition solar_position(double time, const SiteLocation& site);

struct SurfaceIrradiance {
	std::array<double, kOrientationCount> total{}; // indexed by Orientation

	double operator[](Orientation o) const { return total[static_cast<std::size_t>(o)]; }
};

// Isotropic sky: vertical surfaces see half the sky and half the ground.
SurfaceIrradiance irradiance_on_surfaces(double direct_normal, double diffuse_horizontal,
                                         const SolarPosition& sun, double albedo = 0.2);

// Irradiance for a record, evaluated with the sun at the middle of its hour.
SurfaceIrradiance incident_irradiance(const WeatherRecord& record, const SiteLocation& site,
                                      double albedo = 0.2);

// Continuous-time view over a WeatherSeries used by the integrator. The
// dry-bulb value of a row is taken at the end of its hour and irradiance at
// the middle; values in between are linear interpolants and the series
// repeats periodically.
class WeatherSampler {
public:
	WeatherSampler(std::shared_ptr<const WeatherSeries> series, double albedo);

	struct Sample {
		double dry_bulb = 0.0;
		double direct_normal = 0.0;
		double diffuse_horizontal = 0.0;
		SurfaceIrradiance surfaces;
	};

	Sample at(double time) const;
	const WeatherSeries& series() const { return *mSeries; }

private:
	std::shared_ptr<const WeatherSeries> mSeries;
	std::vector<SurfaceIrradiance> mSurfaces;
};

} // namespace thermsynth
