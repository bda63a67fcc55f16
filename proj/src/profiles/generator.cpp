#include <array>
#include <cmath>
#include <random>

#include "thermsynth/error.hpp"
#include "thermsynth/profiles.hpp"

namespace thermsynth {

namespace {

constexpr int kSlotsPerDay = 288;

// Bit-exact across standard libraries, unlike std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Number of 5-minute slots in an airing event, geometric with the given mean.
int airing_slots(std::mt19937_64& rng, double mean_minutes)
{
	const double q = std::min(1.0, 5.0 / std::max(mean_minutes, 5.0));
	if (q >= 1.0)
		return 1;
	const double u = 1.0 - unit_uniform(rng); // (0, 1]
	return 1 + static_cast<int>(std::floor(std::log(u) / std::log(1.0 - q)));
}

bool in_window(double hour, double start, double end)
{
	if (start == end)
		return false;
	return start < end ? (hour >= start && hour < end) : (hour >= start || hour < end);
}

void check_template(const DayTemplate& t)
{
	const auto n = t.occupancy.size();
	if (n == 0 || kSlotsPerDay % n != 0 || t.device_load.size() != n)
		throw Error(ErrorCode::InvalidParameter, "day template slot count must divide 288 and match device load");
	for (std::size_t i = 0; i < n; ++i)
		if (t.occupancy[i] < 0.0 || t.device_load[i] < 0.0)
			throw Error(ErrorCode::OutOfRangeValue, "day template values must be non-negative");
}

} // namespace

YearProfiles generate_year(const std::vector<DayTemplate>& templates, const std::set<int>& holidays,
                           std::uint64_t seed, const GenerationParams& params)
{
	if (templates.size() != 4)
		throw Error(ErrorCode::InvalidParameter, "one day template per day kind is required");
	for (const auto& t : templates)
		check_template(t);
	if (params.days <= 0 || params.airing_probability < 0.0 || params.airing_probability > 1.0 ||
	    params.watts_per_person < 0.0 || params.max_day_shift_slots < 0)
		throw Error(ErrorCode::InvalidParameter, "invalid profile generation parameters");

	std::mt19937_64 rng(seed);
	const std::size_t total = static_cast<std::size_t>(params.days) * kSlotsPerDay;
	std::vector<double> gains(total), windows(total, 0.0), occupancy(total);
	std::vector<bool> awake(total);

	int open_left = 0;
	for (int d = 0; d < params.days; ++d) {
		DayKind kind;
		if (holidays.count(d))
			kind = DayKind::Holiday;
		else {
			const int wd = (params.first_weekday + d) % 7;
			kind = wd < 5 ? DayKind::Workday : (wd == 5 ? DayKind::Saturday : DayKind::Sunday);
		}
		const DayTemplate& t = templates[static_cast<std::size_t>(kind)];
		const int per_slot = kSlotsPerDay / static_cast<int>(t.occupancy.size());

		int shift = 0;
		if (params.max_day_shift_slots > 0) {
			const int span = 2 * params.max_day_shift_slots + 1;
			shift = static_cast<int>(std::floor(unit_uniform(rng) * span)) - params.max_day_shift_slots;
		}

		for (int s = 0; s < kSlotsPerDay; ++s) {
			const int src = ((s - shift) % kSlotsPerDay + kSlotsPerDay) % kSlotsPerDay;
			const std::size_t ti = static_cast<std::size_t>(src / per_slot);
			const double occ = t.occupancy[ti];
			const double hour = (src + 0.5) * 24.0 / kSlotsPerDay;
			const bool is_awake = !in_window(hour, t.sleep_start_hour, t.sleep_end_hour);
			const std::size_t i = static_cast<std::size_t>(d) * kSlotsPerDay + static_cast<std::size_t>(s);

			occupancy[i] = occ;
			awake[i] = is_awake;
			gains[i] = occ * params.watts_per_person + t.device_load[ti];

			if (occ <= 0.0 || !is_awake) {
				open_left = 0;
				continue;
			}
			if (open_left > 0) {
				windows[i] = 1.0;
				--open_left;
			} else if (unit_uniform(rng) < params.airing_probability) {
				windows[i] = 1.0;
				open_left = airing_slots(rng, params.mean_airing_duration) - 1;
			}
		}
	}

	YearProfiles out;
	out.gains = GainProfile(kProfileStep, std::move(gains));
	out.windows = WindowProfile(kProfileStep, std::move(windows));
	out.occupancy = std::move(occupancy);
	out.awake = std::move(awake);
	return out;
}

namespace {

struct Span {
	int from, to;
	double value;
};

std::vector<double> hourly(double base, std::initializer_list<Span> spans)
{
	std::vector<double> v(24, base);
	for (const auto& s : spans)
		for (int h = s.from; h < s.to; ++h)
			v[static_cast<std::size_t>(h)] = s.value;
	return v;
}

DayTemplate day(DayKind kind, std::vector<double> occ, std::vector<double> devices, double sleep_start,
                double sleep_end)
{
	return DayTemplate{kind, std::move(occ), std::move(devices), sleep_start, sleep_end};
}

struct Archetype {
	std::vector<DayTemplate> templates;
	GenerationParams params;
};

Archetype make_archetype(std::string_view name)
{
	using K = DayKind;
	Archetype a;
	if (name == "CHR07") {
		// Single person working full time, away on workdays.
		const auto sunday = day(K::Sunday, hourly(1, {}), hourly(40, {{9, 11, 250}, {12, 13, 300}, {18, 21, 250}}), 23, 8);
		a.templates = {
			day(K::Workday, hourly(1, {{7, 17, 0}}),
			    hourly(40, {{6, 7, 350}, {18, 20, 300}, {20, 23, 180}, {23, 24, 80}}), 23, 6),
			day(K::Saturday, hourly(1, {{11, 15, 0}}), hourly(40, {{8, 10, 250}, {18, 21, 300}, {21, 24, 150}}), 0,
			    8),
			sunday,
			sunday,
		};
		a.templates[3].kind = K::Holiday;
		a.params.airing_probability = 0.02;
		a.params.mean_airing_duration = 10;
	} else if (name == "CHR01") {
		// Couple, both working.
		const auto sunday =
			day(K::Sunday, hourly(2, {{14, 17, 1}}), hourly(60, {{9, 11, 350}, {12, 13, 400}, {18, 20, 350}}), 23, 8);
		a.templates = {
			day(K::Workday, hourly(2, {{7, 17, 0}, {17, 18, 1}}),
			    hourly(60, {{6, 7, 400}, {17, 18, 150}, {18, 21, 500}, {21, 23, 250}}), 23, 6),
			day(K::Saturday, hourly(2, {{10, 13, 0}}),
			    hourly(60, {{8, 10, 350}, {13, 15, 250}, {18, 21, 450}, {21, 23, 250}}), 0, 8),
			sunday,
			sunday,
		};
		a.templates[3].kind = K::Holiday;
		a.params.airing_probability = 0.025;
		a.params.mean_airing_duration = 10;
	} else if (name == "CHR27") {
		// Family with two children.
		const auto sunday = day(K::Sunday, hourly(4, {{15, 18, 0}}),
		                        hourly(80, {{9, 11, 500}, {12, 13, 650}, {18, 20, 500}}), 23, 8);
		a.templates = {
			day(K::Workday, hourly(4, {{8, 13, 0}, {13, 17, 2}}),
			    hourly(80, {{6, 8, 600}, {13, 14, 300}, {14, 17, 200}, {17, 20, 700}, {20, 22, 400}}), 22, 6),
			day(K::Saturday, hourly(4, {{9, 12, 2}, {14, 17, 1}}),
			    hourly(80, {{8, 10, 500}, {12, 14, 600}, {18, 20, 650}, {20, 22, 350}}), 23, 8),
			sunday,
			sunday,
		};
		a.templates[3].kind = K::Holiday;
		a.params.airing_probability = 0.03;
		a.params.mean_airing_duration = 15;
		a.params.max_day_shift_slots = 6;
	} else if (name == "CHR16") {
		// Retired couple, at home most of the day.
		const auto devices = hourly(120, {{7, 9, 220}, {11, 13, 260}, {13, 18, 150}, {18, 20, 230}, {20, 22, 180}});
		const auto sunday = day(K::Sunday, hourly(2, {}), devices, 22, 7);
		a.templates = {
			day(K::Workday, hourly(2, {{10, 11, 1}}), devices, 22, 7),
			day(K::Saturday, hourly(2, {}), devices, 22, 7),
			sunday,
			sunday,
		};
		a.templates[3].kind = K::Holiday;
		a.params.airing_probability = 0.04;
		a.params.mean_airing_duration = 15;
	} else if (name == "CHR52") {
		// Shared student flat with late and irregular hours.
		const auto sunday = day(K::Sunday, hourly(3, {}), hourly(90, {{11, 13, 350}, {13, 18, 200}, {19, 24, 600}}), 2,
		                        11);
		a.templates = {
			day(K::Workday, hourly(3, {{9, 16, 1}, {16, 19, 2}}),
			    hourly(90, {{0, 1, 350}, {9, 10, 250}, {12, 14, 200}, {18, 22, 700}, {22, 24, 550}}), 1, 9),
			day(K::Saturday, hourly(3, {{13, 18, 1}}), hourly(90, {{0, 2, 400}, {11, 13, 350}, {19, 24, 650}}), 2,
			    11),
			sunday,
			sunday,
		};
		a.templates[3].kind = K::Holiday;
		a.params.airing_probability = 0.02;
		a.params.mean_airing_duration = 10;
		a.params.max_day_shift_slots = 24;
	} else {
		throw Error(ErrorCode::UnknownArchetype, "unknown household archetype '" + std::string(name) + "'");
	}
	return a;
}

} // namespace

const std::vector<std::string>& archetype_names()
{
	static const std::vector<std::string> names = {
		"CHR07_Single_with_work",       "CHR01_Couple_both_at_Work", "CHR27_Family_both_at_work_2_children",
		"CHR16_Couple_over_65_years",   "CHR52_Student_Flatsharing",
	};
	return names;
}

YearProfiles archetype(std::string_view name, std::uint64_t seed)
{
	// Either the full identifier or its leading code is accepted.
	std::string_view code = name.substr(0, name.find('_'));
	bool known = false;
	for (const auto& n : archetype_names())
		known = known || n == name || (code == name && n.starts_with(std::string(code) + "_"));
	if (!known)
		throw Error(ErrorCode::UnknownArchetype, "unknown household archetype '" + std::string(name) + "'");
	const Archetype a = make_archetype(code);
	return generate_year(a.templates, {0, 120, 275, 358, 359}, seed, a.params);
}

} // namespace thermsynth
