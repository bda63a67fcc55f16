#include "thermsynth/weather.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "thermsynth/detail/text.hpp"
#include "thermsynth/error.hpp"

namespace thermsynth {

namespace {

constexpr std::size_t kHeaderLines = 8;
constexpr std::size_t kMinFields = 35;

// 1-based EPW field numbers
constexpr std::size_t kFieldDryBulb = 7;
constexpr std::size_t kFieldDirectNormal = 15;
constexpr std::size_t kFieldDiffuseHorizontal = 16;

constexpr double kMissingDryBulb = 99.9;
constexpr double kMissingIrradiance = 9999.0;

bool is_leap_day_present(int month, int day) { return month == 2 && day == 29; }

int days_in_month(int month, bool leap)
{
	static constexpr int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
	return (month == 2 && leap) ? 29 : days[month - 1];
}

int day_of_year(int month, int day, bool leap)
{
	int doy = 0;
	for (int m = 1; m < month; ++m)
		doy += days_in_month(m, leap);
	return doy + day - 1;
}

struct RawRow {
	int month = 0;
	int day = 0;
	int hour = 0;
	std::optional<double> dry_bulb;
	std::optional<double> direct_normal;
	std::optional<double> diffuse_horizontal;
};

[[noreturn]] void fail(ErrorCode code, std::size_t line_no, const std::string& what)
{
	throw Error(code, "line " + std::to_string(line_no) + ": " + what);
}

int require_int(std::string_view field, std::size_t line_no, const char* name)
{
	const auto v = detail::parse_long(field);
	if (!v)
		fail(ErrorCode::MalformedRecord, line_no, std::string("bad ") + name + " field");
	return static_cast<int>(*v);
}

std::optional<double> read_value(std::string_view field, double sentinel, std::size_t line_no, const char* name)
{
	if (detail::trim(field).empty())
		return std::nullopt;
	const auto v = detail::parse_double(field);
	if (!v || !std::isfinite(*v))
		fail(ErrorCode::MalformedRecord, line_no, std::string("bad ") + name + " value");
	if (*v >= sentinel)
		return std::nullopt;
	return v;
}

// Fills gaps by linear interpolation between the nearest valid neighbours;
// leading/trailing gaps take the nearest valid value.
void fill_missing(std::vector<std::optional<double>>& column, const char* name)
{
	std::optional<std::size_t> prev;
	const std::size_t n = column.size();
	for (std::size_t i = 0; i < n; ++i) {
		if (!column[i])
			continue;
		if (!prev) {
			for (std::size_t j = 0; j < i; ++j)
				column[j] = column[i];
		} else if (*prev + 1 < i) {
			const double a = *column[*prev];
			const double b = *column[i];
			const double span = static_cast<double>(i - *prev);
			for (std::size_t j = *prev + 1; j < i; ++j)
				column[j] = a + (b - a) * static_cast<double>(j - *prev) / span;
		}
		prev = i;
	}
	if (!prev)
		throw Error(ErrorCode::AllMissingColumn, std::string(name) + " contains only missing values");
	for (std::size_t j = *prev + 1; j < n; ++j)
		column[j] = column[*prev];
}

} // namespace

WeatherSeries parse_epw(std::istream& source)
{
	std::vector<std::string> lines;
	for (std::string line; std::getline(source, line);) {
		if (!line.empty() && line.back() == '\r')
			line.pop_back();
		lines.push_back(std::move(line));
	}
	while (!lines.empty() && detail::trim(lines.back()).empty())
		lines.pop_back();

	if (lines.size() < kHeaderLines)
		throw Error(ErrorCode::MalformedHeader, "expected " + std::to_string(kHeaderLines) + " header lines");

	WeatherSeries series;
	{
		const auto fields = detail::split(lines[0], ',');
		if (fields.size() < 10 || detail::trim(fields[0]) != "LOCATION")
			throw Error(ErrorCode::MalformedHeader, "first line must be a LOCATION record with 10 fields");
		const auto lat = detail::parse_double(fields[6]);
		const auto lon = detail::parse_double(fields[7]);
		const auto tz = detail::parse_double(fields[8]);
		if (!lat || !lon || !tz || std::abs(*lat) > 90.0 || std::abs(*lon) > 180.0 || std::abs(*tz) > 14.0)
			throw Error(ErrorCode::MalformedHeader, "LOCATION latitude/longitude/timezone not numeric or out of range");
		series.city = std::string(detail::trim(fields[1]));
		series.site = {*lat, *lon, *tz};
	}
	if (detail::trim(lines[kHeaderLines - 1]).rfind("DATA PERIODS", 0) != 0)
		throw Error(ErrorCode::MalformedHeader, "line 8 must be the DATA PERIODS record");

	std::vector<RawRow> rows;
	rows.reserve(lines.size() - kHeaderLines);
	bool leap = false;
	for (std::size_t i = kHeaderLines; i < lines.size(); ++i) {
		const std::size_t line_no = i + 1;
		const auto fields = detail::split(lines[i], ',');
		if (fields.size() < kMinFields)
			fail(ErrorCode::MalformedRecord, line_no,
			     "expected at least " + std::to_string(kMinFields) + " fields, got " + std::to_string(fields.size()));
		RawRow row;
		row.month = require_int(fields[1], line_no, "month");
		row.day = require_int(fields[2], line_no, "day");
		row.hour = require_int(fields[3], line_no, "hour");
		if (row.month < 1 || row.month > 12 || row.day < 1 || row.day > 31 || row.hour < 1 || row.hour > 24)
			fail(ErrorCode::MalformedRecord, line_no, "date/hour out of range");
		leap = leap || is_leap_day_present(row.month, row.day);
		row.dry_bulb = read_value(fields[kFieldDryBulb - 1], kMissingDryBulb, line_no, "dry-bulb");
		row.direct_normal = read_value(fields[kFieldDirectNormal - 1], kMissingIrradiance, line_no, "direct normal");
		row.diffuse_horizontal =
			read_value(fields[kFieldDiffuseHorizontal - 1], kMissingIrradiance, line_no, "diffuse horizontal");
		if (row.dry_bulb && (*row.dry_bulb < -70.0 || *row.dry_bulb > 70.0))
			fail(ErrorCode::MalformedRecord, line_no, "dry-bulb outside [-70, 70] degC");
		if ((row.direct_normal && *row.direct_normal < 0.0) || (row.diffuse_horizontal && *row.diffuse_horizontal < 0.0))
			fail(ErrorCode::MalformedRecord, line_no, "negative irradiance");
		rows.push_back(row);
	}
	if (rows.empty())
		throw Error(ErrorCode::MalformedHeader, "no data rows");
	leap = leap || rows.size() == 8784;

	for (std::size_t i = 0; i < rows.size(); ++i) {
		const auto& r = rows[i];
		if (r.day > days_in_month(r.month, leap))
			fail(ErrorCode::MalformedRecord, kHeaderLines + i + 1, "day does not exist in month");
		const long idx = static_cast<long>(day_of_year(r.month, r.day, leap)) * 24 + r.hour - 1;
		if (idx != static_cast<long>(i))
			fail(ErrorCode::NonHourlyData, kHeaderLines + i + 1,
			     "rows must be consecutive hours starting January 1, hour 1");
	}

	std::vector<std::optional<double>> dry(rows.size()), dni(rows.size()), dhi(rows.size());
	for (std::size_t i = 0; i < rows.size(); ++i) {
		dry[i] = rows[i].dry_bulb;
		dni[i] = rows[i].direct_normal;
		dhi[i] = rows[i].diffuse_horizontal;
	}
	fill_missing(dry, "dry-bulb");
	fill_missing(dni, "direct normal");
	fill_missing(dhi, "diffuse horizontal");

	series.records.resize(rows.size());
	for (std::size_t i = 0; i < rows.size(); ++i)
		series.records[i] = {static_cast<double>(i) * kWeatherStep, *dry[i], *dni[i], *dhi[i]};
	return series;
}

WeatherSeries load_epw(const std::filesystem::path& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw Error(ErrorCode::IoError, "cannot open weather file " + path.string());
	return parse_epw(in);
}

WeatherSeries constant_weather(double dry_bulb, double direct_normal, double diffuse_horizontal, SiteLocation site,
                               std::size_t hours)
{
	WeatherSeries series;
	series.city = "constant";
	series.site = site;
	series.records.resize(hours);
	for (std::size_t i = 0; i < hours; ++i)
		series.records[i] = {static_cast<double>(i) * kWeatherStep, dry_bulb, direct_normal, diffuse_horizontal};
	return series;
}

} // namespace thermsynth
