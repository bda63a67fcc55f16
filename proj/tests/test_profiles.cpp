#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

#include "doctest.h"
#include "support.hpp"

#include "thermsynth/error.hpp"
#include "thermsynth/profiles.hpp"

using namespace thermsynth;

namespace {

std::vector<DayTemplate> flat_templates(double persons, double devices, double sleep_start = 0.0,
                                        double sleep_end = 0.0)
{
	std::vector<DayTemplate> t;
	for (auto kind : {DayKind::Workday, DayKind::Saturday, DayKind::Sunday, DayKind::Holiday})
		t.push_back({kind, std::vector<double>(24, persons), std::vector<double>(24, devices), sleep_start, sleep_end});
	return t;
}

ErrorCode parse_error(const std::string& text, ProfileKind kind)
{
	try {
		parse_profile_csv(text, kind);
	} catch (const Error& e) {
		return e.code();
	}
	FAIL("expected the profile to be rejected");
	return ErrorCode::IoError;
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size()); }

} // namespace

TEST_CASE("empty household gives no gains and closed windows")
{
	const auto y = generate_year(flat_templates(0, 0), {}, 3, GenerationParams{});
	CHECK(y.gains.size() == 365 * 288);
	CHECK(y.gains.step() == 300.0);
	for (double g : y.gains.samples())
		CHECK(g == 0.0);
	for (double w : y.windows.samples())
		CHECK(w == 0.0);
}

TEST_CASE("constant template gives a constant gain")
{
	GenerationParams p;
	p.airing_probability = 0.0;
	const auto y = generate_year(flat_templates(1, 100), {}, 3, p);
	for (double g : y.gains.samples())
		CHECK(g == 200.0);
	CHECK(y.gains.at(0.0) == 200.0);
	CHECK(y.gains.at(123456.0) == 200.0);
}

TEST_CASE("airing frequency follows the configured probability")
{
	GenerationParams p;
	p.airing_probability = 0.05;
	p.mean_airing_duration = 5.0; // single-slot events, so every slot is an independent trial
	const auto y = generate_year(flat_templates(1, 0), {}, 11, p);
	const double n = double(y.windows.size());
	const double sigma = std::sqrt(0.05 * 0.95 / n);
	CHECK(std::abs(mean(y.windows.samples()) - 0.05) < 3.0 * sigma);
}

TEST_CASE("longer airing events keep the window open longer")
{
	GenerationParams p;
	p.airing_probability = 0.01;
	p.mean_airing_duration = 30.0;
	const auto y = generate_year(flat_templates(1, 0), {}, 5, p);
	const auto& w = y.windows.samples();
	int events = 0, open = 0;
	for (std::size_t i = 0; i < w.size(); ++i) {
		open += w[i] > 0.0;
		events += w[i] > 0.0 && (i == 0 || w[i - 1] == 0.0);
	}
	REQUIRE(events > 100);
	const double minutes = 5.0 * open / events;
	CHECK(minutes > 20.0);
	CHECK(minutes < 40.0);
}

TEST_CASE("archetypes differ in shape")
{
	const auto ratio = [](const YearProfiles& y) {
		const auto& g = y.gains.samples();
		return *std::max_element(g.begin(), g.end()) / mean(g);
	};
	const auto single = archetype("CHR07_Single_with_work", 1);
	const auto retired = archetype("CHR16_Couple_over_65_years", 1);
	CHECK(ratio(retired) < ratio(single));

	// Day 1 is a Tuesday: nobody is home between 10:00 and 16:00.
	for (int s = 10 * 12; s < 16 * 12; ++s)
		CHECK(single.occupancy[288 + s] == 0.0);
	for (int s = 10 * 12; s < 16 * 12; ++s)
		CHECK(single.windows.samples()[288 + s] == 0.0);
	CHECK(retired.occupancy[288 + 14 * 12] > 0.0);
}

TEST_CASE("archetype names")
{
	CHECK(archetype_names().size() == 5);
	CHECK(archetype("CHR52", 4).gains == archetype("CHR52_Student_Flatsharing", 4).gains);
	for (const char* bad : {"CHR99", "CHR07_Someone_else", "", "chr07"}) {
		INFO(bad);
		try {
			archetype(bad);
			FAIL("expected UnknownArchetype");
		} catch (const Error& e) {
			CHECK(e.code() == ErrorCode::UnknownArchetype);
		}
	}
}

TEST_CASE("generation is deterministic per seed")
{
	for (const auto& name : archetype_names()) {
		INFO(name);
		const auto a = archetype(name, 42), b = archetype(name, 42);
		CHECK(a.gains == b.gains);
		CHECK(a.windows == b.windows);
	}
	CHECK_FALSE(archetype("CHR27", 1).windows == archetype("CHR27", 2).windows);
}

TEST_CASE("windows stay shut while nobody is home or awake")
{
	for (const auto& name : archetype_names()) {
		INFO(name);
		const auto y = archetype(name, 9);
		const auto& w = y.windows.samples();
		std::size_t open = 0;
		for (std::size_t i = 0; i < w.size(); ++i) {
			CHECK((w[i] == 0.0 || w[i] == 1.0));
			if (y.occupancy[i] == 0.0 || !y.awake[i])
				CHECK(w[i] == 0.0);
			open += w[i] > 0.0;
		}
		CHECK(open > 0);
	}
}

TEST_CASE("annual gains are positive and distinct")
{
	std::vector<double> kwh;
	for (const auto& name : archetype_names()) {
		const auto y = archetype(name, 1);
		const auto& g = y.gains.samples();
		kwh.push_back(std::accumulate(g.begin(), g.end(), 0.0) * 300.0 / 3.6e6);
		CHECK(kwh.back() > 500.0);
		CHECK(kwh.back() < 20000.0);
	}
	std::sort(kwh.begin(), kwh.end());
	CHECK(std::adjacent_find(kwh.begin(), kwh.end()) == kwh.end());
}

TEST_CASE("holidays use the holiday template")
{
	auto t = flat_templates(1, 0);
	t[3].device_load.assign(24, 500.0);
	GenerationParams p;
	p.airing_probability = 0.0;
	p.days = 14;
	const auto y = generate_year(t, {3}, 1, p);
	CHECK(y.gains.samples()[3 * 288 + 100] == 600.0);
	CHECK(y.gains.samples()[2 * 288 + 100] == 100.0);
}

TEST_CASE("invalid generation inputs")
{
	auto t = flat_templates(1, 0);
	CHECK_THROWS_AS(generate_year({t[0]}, {}, 1, {}), Error);
	t[1].occupancy.assign(7, 1.0);
	t[1].device_load.assign(7, 1.0);
	CHECK_THROWS_AS(generate_year(t, {}, 1, {}), Error);
	GenerationParams p;
	p.airing_probability = 1.5;
	CHECK_THROWS_AS(generate_year(flat_templates(1, 0), {}, 1, p), Error);
}

TEST_CASE("profile csv parsing")
{
	const auto p = parse_profile_csv("time_s,value\n0,100\n900,150\n1800,200\n", ProfileKind::Gain);
	CHECK(p.size() == 3);
	CHECK(p.step() == 900.0);
	CHECK(p.at(0.0) == 100.0);
	CHECK(p.at(899.0) == 100.0);
	CHECK(p.at(900.0) == 150.0);
	CHECK(p.at(2000.0) == 200.0);
	CHECK(p.at(2700.0) == 100.0); // repeats after the last sample

	const auto crlf = parse_profile_csv("time_s,value\r\n0,0.5\r\n300,1\r\n", ProfileKind::Window);
	CHECK(crlf.samples() == std::vector<double>{0.5, 1.0});

	CHECK(parse_error("time_s,value\n0,100\n900,-5\n", ProfileKind::Gain) == ErrorCode::OutOfRangeValue);
	CHECK(parse_error("time_s,value\n0,1.5\n", ProfileKind::Window) == ErrorCode::OutOfRangeValue);
	CHECK(parse_error("time_s,value\n0,1\n900,1\n2000,1\n", ProfileKind::Gain) == ErrorCode::NonUniformStep);
	CHECK(parse_error("time_s,value\n0,1\n0,1\n", ProfileKind::Gain) == ErrorCode::NonUniformStep);
	CHECK(parse_error("time_s,value\n0,1\n900\n", ProfileKind::Gain) == ErrorCode::MalformedRow);
	CHECK(parse_error("time_s,value\n0,abc\n", ProfileKind::Gain) == ErrorCode::MalformedRow);
	CHECK(parse_error("t,v\n0,1\n", ProfileKind::Gain) == ErrorCode::MalformedRow);
	CHECK(parse_error("time_s,value\n", ProfileKind::Gain) == ErrorCode::MalformedRow);
}

TEST_CASE("profile csv round trip")
{
	const auto dir = testing::scratch_dir("profiles");
	const auto y = archetype("CHR01", 3);
	write_profile_csv(dir / "gains.csv", y.gains);
	const auto back = load_profile_csv(dir / "gains.csv", ProfileKind::Gain);
	CHECK(back == y.gains);
	CHECK_THROWS_AS(load_profile_csv(dir / "missing.csv", ProfileKind::Gain), Error);
}
