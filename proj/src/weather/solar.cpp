#include "thermsynth/weather.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thermsynth/error.hpp"

namespace thermsynth {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kDay = 86400.0;

double wrap(double t, double period)
{
	double r = std::fmod(t, period);
	return r < 0.0 ? r + period : r;
}

} // namespace

SolarPosition solar_position(double time, const SiteLocation& site)
{
	const double clock_hours = wrap(time, kDay) / 3600.0;
	const double day = std::floor(time / kDay); // 0-based day of year

	// Spencer (1971) Fourier series in the fractional year.
	const double g = 2.0 * std::numbers::pi / 365.0 * (day + (clock_hours - 12.0) / 24.0);
	const double declination = 0.006918 - 0.399912 * std::cos(g) + 0.070257 * std::sin(g) -
	                           0.006758 * std::cos(2 * g) + 0.000907 * std::sin(2 * g) -
	                           0.002697 * std::cos(3 * g) + 0.00148 * std::sin(3 * g);
	const double eot_minutes = 229.18 * (0.000075 + 0.001868 * std::cos(g) - 0.032077 * std::sin(g) -
	                                     0.014615 * std::cos(2 * g) - 0.040849 * std::sin(2 * g));

	const double solar_hours =
		clock_hours + (4.0 * (site.longitude - 15.0 * site.timezone_offset) + eot_minutes) / 60.0;
	const double hour_angle = (solar_hours - 12.0) * 15.0 * kDeg;
	const double lat = site.latitude * kDeg;

	const double sin_alt = std::sin(lat) * std::sin(declination) +
	                       std::cos(lat) * std::cos(declination) * std::cos(hour_angle);
	const double altitude = std::asin(std::clamp(sin_alt, -1.0, 1.0));

	// Azimuth from north, clockwise.
	const double east = -std::cos(declination) * std::sin(hour_angle);
	const double north = std::sin(declination) * std::cos(lat) -
	                     std::cos(declination) * std::sin(lat) * std::cos(hour_angle);
	double azimuth = std::atan2(east, north) / kDeg;
	if (azimuth < 0.0)
		azimuth += 360.0;

	return {altitude / kDeg, azimuth};
}

SurfaceIrradiance irradiance_on_surfaces(double direct_normal, double diffuse_horizontal, const SolarPosition& sun,
                                         double albedo)
{
	SurfaceIrradiance out;
	const double alt = sun.altitude * kDeg;
	const double sin_alt = std::sin(alt);
	const double beam = sun.altitude > 0.0 ? direct_normal : 0.0;
	const double global_horizontal = beam * std::max(0.0, sin_alt) + diffuse_horizontal;

	for (auto o : {Orientation::North, Orientation::East, Orientation::South, Orientation::West}) {
		const double cos_incidence = std::cos(alt) * std::cos((sun.azimuth - azimuth_of(o)) * kDeg);
		out.total[static_cast<std::size_t>(o)] = beam * std::max(0.0, cos_incidence) + 0.5 * diffuse_horizontal +
		                                          0.5 * albedo * global_horizontal;
	}
	out.total[static_cast<std::size_t>(Orientation::Horizontal)] = global_horizontal;
	return out;
}

SurfaceIrradiance incident_irradiance(const WeatherRecord& record, const SiteLocation& site, double albedo)
{
	const auto sun = solar_position(record.timestamp + 0.5 * kWeatherStep, site);
	return irradiance_on_surfaces(record.direct_normal, record.diffuse_horizontal, sun, albedo);
}

WeatherSampler::WeatherSampler(std::shared_ptr<const WeatherSeries> series, double albedo)
	: mSeries(std::move(series))
{
	if (!mSeries || mSeries->records.empty())
		throw Error(ErrorCode::ConfigError, "weather series is empty");
	mSurfaces.reserve(mSeries->records.size());
	for (const auto& r : mSeries->records)
		mSurfaces.push_back(incident_irradiance(r, mSeries->site, albedo));
}

WeatherSampler::Sample WeatherSampler::at(double time) const
{
	const auto& recs = mSeries->records;
	const long n = static_cast<long>(recs.size());
	const double t = wrap(time, mSeries->duration());

	// Locates the bracketing rows for values anchored at (k + offset) hours.
	auto bracket = [n, t](double offset, long& i0, long& i1, double& frac) {
		const double p = t / kWeatherStep - offset;
		const double fl = std::floor(p);
		frac = p - fl;
		i0 = static_cast<long>(fl) % n;
		if (i0 < 0)
			i0 += n;
		i1 = (i0 + 1) % n;
	};

	Sample s;
	long a = 0, b = 0;
	double f = 0.0;
	bracket(1.0, a, b, f);
	s.dry_bulb = recs[a].dry_bulb + f * (recs[b].dry_bulb - recs[a].dry_bulb);

	bracket(0.5, a, b, f);
	s.direct_normal = recs[a].direct_normal + f * (recs[b].direct_normal - recs[a].direct_normal);
	s.diffuse_horizontal = recs[a].diffuse_horizontal + f * (recs[b].diffuse_horizontal - recs[a].diffuse_horizontal);
	for (std::size_t k = 0; k < kOrientationCount; ++k)
		s.surfaces.total[k] = mSurfaces[a].total[k] + f * (mSurfaces[b].total[k] - mSurfaces[a].total[k]);
	return s;
}

} // namespace thermsynth
