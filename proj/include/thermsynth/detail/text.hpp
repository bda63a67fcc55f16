#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace thermsynth::detail {

inline std::string_view trim(std::string_view s)
{
	const auto first = s.find_first_not_of(" \t\r\n");
	if (first == std::string_view::npos)
		return {};
	const auto last = s.find_last_not_of(" \t\r\n");
	return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view line, char sep)
{
	std::vector<std::string_view> out;
	std::size_t start = 0;
	while (true) {
		const auto pos = line.find(sep, start);
		if (pos == std::string_view::npos) {
			out.push_back(line.substr(start));
			return out;
		}
		out.push_back(line.substr(start, pos - start));
		start = pos + 1;
	}
}

// Locale-independent; rejects trailing garbage.
inline std::optional<double> parse_double(std::string_view s)
{
	s = trim(s);
	if (!s.empty() && s.front() == '+')
		s.remove_prefix(1);
	if (s.empty())
		return std::nullopt;
	double value = 0.0;
	const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
	if (ec != std::errc() || ptr != s.data() + s.size())
		return std::nullopt;
	return value;
}

inline std::optional<long> parse_long(std::string_view s)
{
	s = trim(s);
	if (s.empty())
		return std::nullopt;
	long value = 0;
	const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
	if (ec != std::errc() || ptr != s.data() + s.size())
		return std::nullopt;
	return value;
}

// Shortest representation that round-trips.
inline void append_double(std::string& out, double value)
{
	char buf[32];
	const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
	out.append(buf, ptr);
}

inline std::string format_double(double value)
{
	std::string s;
	append_double(s, value);
	return s;
}

} // namespace thermsynth::detail
