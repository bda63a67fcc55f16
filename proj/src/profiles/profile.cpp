#include "thermsynth/profiles.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "thermsynth/detail/text.hpp"
#include "thermsynth/error.hpp"

namespace thermsynth {

Profile::Profile(double step, std::vector<double> samples, double start)
	: mStep(step), mStart(start), mSamples(std::move(samples))
{
	if (!(step > 0.0) || !std::isfinite(step))
		throw Error(ErrorCode::NonUniformStep, "profile step must be positive");
	if (mSamples.empty())
		throw Error(ErrorCode::MalformedRow, "profile has no samples");
}

double Profile::at(double time) const
{
	const long n = static_cast<long>(mSamples.size());
	long i = static_cast<long>(std::floor((time - mStart) / mStep)) % n;
	if (i < 0)
		i += n;
	return mSamples[static_cast<std::size_t>(i)];
}

Profile parse_profile_csv(std::string_view text, ProfileKind kind)
{
	std::vector<double> times, values;
	std::size_t line_no = 0;
	bool header_seen = false;
	std::size_t pos = 0;
	while (pos <= text.size()) {
		auto end = text.find('\n', pos);
		if (end == std::string_view::npos)
			end = text.size();
		const auto line = detail::trim(text.substr(pos, end - pos));
		pos = end + 1;
		++line_no;
		if (line.empty())
			continue;
		if (!header_seen) {
			if (line != "time_s,value")
				throw Error(ErrorCode::MalformedRow, "line 1: header must be 'time_s,value'");
			header_seen = true;
			continue;
		}
		const auto fields = detail::split(line, ',');
		const auto t = fields.size() == 2 ? detail::parse_double(fields[0]) : std::nullopt;
		const auto v = fields.size() == 2 ? detail::parse_double(fields[1]) : std::nullopt;
		if (!t || !v || !std::isfinite(*t) || !std::isfinite(*v))
			throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": expected two numbers");
		if (kind == ProfileKind::Gain && *v < 0.0)
			throw Error(ErrorCode::OutOfRangeValue,
			            "line " + std::to_string(line_no) + ": internal gain must be non-negative");
		if (kind == ProfileKind::Window && (*v < 0.0 || *v > 1.0))
			throw Error(ErrorCode::OutOfRangeValue,
			            "line " + std::to_string(line_no) + ": window opening must lie in [0, 1]");
		times.push_back(*t);
		values.push_back(*v);
	}
	if (!header_seen || values.empty())
		throw Error(ErrorCode::MalformedRow, "profile file has no data rows");

	double step = kProfileStep;
	if (times.size() > 1) {
		step = times[1] - times[0];
		if (!(step > 0.0))
			throw Error(ErrorCode::NonUniformStep, "time must increase");
		for (std::size_t i = 2; i < times.size(); ++i) {
			if (std::abs((times[i] - times[i - 1]) - step) > 1e-6 * step)
				throw Error(ErrorCode::NonUniformStep, "row " + std::to_string(i + 1) + " breaks the uniform time step");
		}
	}
	return Profile(step, std::move(values), times.front());
}

Profile load_profile_csv(const std::filesystem::path& path, ProfileKind kind)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw Error(ErrorCode::IoError, "cannot open profile " + path.string());
	std::ostringstream ss;
	ss << in.rdbuf();
	return parse_profile_csv(ss.str(), kind);
}

void write_profile_csv(const std::filesystem::path& path, const Profile& profile)
{
	std::string out = "time_s,value\n";
	for (std::size_t i = 0; i < profile.size(); ++i) {
		detail::append_double(out, profile.start() + profile.step() * static_cast<double>(i));
		out.push_back(',');
		detail::append_double(out, profile.samples()[i]);
		out.push_back('\n');
	}
	std::ofstream f(path, std::ios::binary);
	if (!f)
		throw Error(ErrorCode::IoError, "cannot write profile " + path.string());
	f << out;
}

} // namespace thermsynth
