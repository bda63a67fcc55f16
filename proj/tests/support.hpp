#pragma once

// Shared fixtures: EPW text builders and a deterministic synthetic weather year.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testing {

inline std::filesystem::path scratch_dir(const std::string& name)
{
	auto dir = std::filesystem::temp_directory_path() / ("thermsynth-tests-" + name);
	std::filesystem::remove_all(dir);
	std::filesystem::create_directories(dir);
	return dir;
}

inline std::string epw_header(double lat = 48.13, double lon = 11.7, double tz = 1.0, const std::string& city = "Test")
{
	std::ostringstream s;
	s << "LOCATION," << city << ",-,DEU,Synthetic,000000," << lat << "," << lon << "," << tz << ",500.0\n"
	  << "DESIGN CONDITIONS,0\n"
	  << "TYPICAL/EXTREME PERIODS,0\n"
	  << "GROUND TEMPERATURES,0\n"
	  << "HOLIDAYS/DAYLIGHT SAVINGS,No,0,0,0\n"
	  << "COMMENTS 1,synthetic\n"
	  << "COMMENTS 2,synthetic\n"
	  << "DATA PERIODS,1,1,Data,Sunday, 1/ 1,12/31\n";
	return s.str();
}

// One EPW data row with 35 fields; only dry-bulb, DNI and DHI matter.
inline std::string epw_row(int month, int day, int hour, double dry, double dni, double dhi)
{
	std::ostringstream s;
	s << "1999," << month << "," << day << "," << hour << ",60,?9?9?9?9E0?9?9?9?9?9?9?9?9?9?9?9?9?9?9?9*9*9?9?9?9,"
	  << dry << ",0.0,70,98000,0,0,300," << (dni + dhi) << "," << dni << "," << dhi;
	for (int f = 17; f <= 35; ++f)
		s << ",0";
	s << "\n";
	return s.str();
}

inline std::string constant_epw(int hours, double dry, double dni = 0.0, double dhi = 0.0)
{
	std::string out = epw_header();
	for (int i = 0; i < hours; ++i) {
		const int day = i / 24;
		out += epw_row(1, day + 1, i % 24 + 1, dry, dni, dhi);
	}
	return out;
}

// A plausible continental year (Denver-like site) with clear and overcast
// days. The sun model here is deliberately simpler than the engine's.
inline std::string synthetic_year_epw(unsigned seed = 7)
{
	constexpr double kPi = 3.14159265358979323846;
	const double lat = 39.74, lon = -105.18, tz = -7.0;
	std::string out = epw_header(lat, lon, tz, "Synthetic-Continental");
	std::mt19937 rng(seed);
	std::uniform_real_distribution<double> unit(0.0, 1.0);
	static constexpr int days_in_month[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
	int doy = 0;
	for (int m = 1; m <= 12; ++m) {
		for (int d = 1; d <= days_in_month[m - 1]; ++d, ++doy) {
			const double clear = unit(rng) < 0.65 ? 1.0 : 0.25 + 0.4 * unit(rng);
			const double offset = 6.0 * (unit(rng) - 0.5);
			const double decl = 23.45 * std::sin(2.0 * kPi * (284.0 + doy + 1) / 365.0) * kPi / 180.0;
			for (int h = 1; h <= 24; ++h) {
				const double clock = h - 0.5;
				const double solar_time = clock + (lon - 15.0 * tz) / 15.0;
				const double omega = (solar_time - 12.0) * 15.0 * kPi / 180.0;
				const double phi = lat * kPi / 180.0;
				const double sin_alt =
					std::sin(phi) * std::sin(decl) + std::cos(phi) * std::cos(decl) * std::cos(omega);
				double dni = 0.0, dhi = 0.0;
				if (sin_alt > 0.0) {
					dni = clear * 900.0 * std::exp(-0.14 / std::max(sin_alt, 0.06));
					dhi = (70.0 + 160.0 * (1.0 - clear)) * sin_alt;
				}
				const double seasonal = 10.0 - 12.0 * std::cos(2.0 * kPi * (doy - 15) / 365.0);
				const double diurnal = 7.0 * std::sin(2.0 * kPi * (clock - 9.0) / 24.0);
				const double dry = seasonal + diurnal * (0.6 + 0.4 * clear) + offset;
				out += epw_row(m, d, h, std::round(dry * 10.0) / 10.0, std::round(dni), std::round(dhi));
			}
		}
	}
	return out;
}

inline std::filesystem::path write_text(const std::filesystem::path& path, const std::string& text)
{
	std::ofstream f(path, std::ios::binary);
	f << text;
	return path;
}

// A real weather file when the tester provides one, else the synthetic year.
inline std::filesystem::path year_weather_file(bool& synthetic)
{
	if (const char* env = std::getenv("THERMSYNTH_WEATHER"); env && *env && std::filesystem::exists(env)) {
		synthetic = false;
		return env;
	}
	synthetic = true;
	static const std::filesystem::path path = [] {
		auto dir = std::filesystem::temp_directory_path() / "thermsynth-tests-weather";
		std::filesystem::create_directories(dir);
		return write_text(dir / "synthetic_year.epw", synthetic_year_epw());
	}();
	return path;
}

} // namespace testing
