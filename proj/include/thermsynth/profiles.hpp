#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace thermsynth {

constexpr double kProfileStep = 300.0;

// Piecewise-constant annual signal sampled with a zero-order hold; repeats
// after its last sample.
class Profile {
public:
	Profile() = default;
	Profile(double step, std::vector<double> samples, double start = 0.0);

	double at(double time) const;
	double step() const { return mStep; }
	double start() const { return mStart; }
	const std::vector<double>& samples() const { return mSamples; }
	std::size_t size() const { return mSamples.size(); }
	double duration() const { return mStep * static_cast<double>(mSamples.size()); }

	bool operator==(const Profile&) const = default;

private:
	double mStep = kProfileStep;
	double mStart = 0.0;
	std::vector<double> mSamples;
};

// Total internal sensible gain (occupants + devices), W.
struct GainProfile : Profile {
	using Profile::Profile;
};

// Window open fraction in [0, 1].
struct WindowProfile : Profile {
	using Profile::Profile;
};

enum class DayKind { Workday, Saturday, Sunday, Holiday };

struct DayTemplate {
	DayKind kind = DayKind::Workday;
	std::vector<double> occupancy;   // persons per slot; slots divide the day evenly
	std::vector<double> device_load; // W per slot, same slot count
	double sleep_start_hour = 23.0;
	double sleep_end_hour = 7.0;
};

struct GenerationParams {
	double watts_per_person = 100.0;   // sensible metabolic output
	double airing_probability = 0.03;  // per 5-minute slot, when occupied and awake
	double mean_airing_duration = 10.0; // minutes, >= 5
	int days = 365;
	int first_weekday = 0;         // 0 = Monday
	int max_day_shift_slots = 0;   // per-day random shift of the whole template
};

struct YearProfiles {
	GainProfile gains;
	WindowProfile windows;
	std::vector<double> occupancy; // per 5-minute slot, for inspection
	std::vector<bool> awake;
};

// `templates` holds one template per DayKind (in enum order).
YearProfiles generate_year(const std::vector<DayTemplate>& templates, const std::set<int>& holidays,
                           std::uint64_t seed, const GenerationParams& params);

const std::vector<std::string>& archetype_names();
YearProfiles archetype(std::string_view name, std::uint64_t seed = 1);

enum class ProfileKind { Gain, Window };

// CSV with header `time_s,value`, uniform time step.
Profile load_profile_csv(const std::filesystem::path& path, ProfileKind kind);
Profile parse_profile_csv(std::string_view text, ProfileKind kind);
void write_profile_csv(const std::filesystem::path& path, const Profile& profile);

} // namespace thermsynth
