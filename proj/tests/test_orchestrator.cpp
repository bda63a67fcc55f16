#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

#include "thermsynth/error.hpp"
#include "thermsynth/orchestrator.hpp"

using namespace thermsynth;

namespace {

// Two days of constant cold weather; cheap enough for batch tests.
Json base_document()
{
	return Json::parse(R"({
		"building": {"internalGain.fileName": "constant:150"},
		"simulation": {"horizon": 172800, "output_interval": 3600, "integrator_step": 300, "batch_name": "t"},
		"weather": {"constant": {"dry_bulb": 0.0, "direct_normal": 0.0, "diffuse_horizontal": 0.0, "hours": 48}}
	})");
}

ErrorCode config_error(const Json& doc)
{
	try {
		plan_runs(parse_config(doc));
	} catch (const Error& e) {
		return e.code();
	}
	FAIL("expected the document to be rejected");
	return ErrorCode::IoError;
}

std::string slurp(const std::filesystem::path& p)
{
	std::ifstream in(p, std::ios::binary);
	std::ostringstream s;
	s << in.rdbuf();
	return s.str();
}

SimOutput run_doc(const Json& doc)
{
	WeatherCache cache;
	const auto plans = plan_runs(parse_config(doc));
	REQUIRE(plans.size() == 1);
	return simulate(plans.front(), cache);
}

VariationSpec spec(VariationSpec::Mode mode, std::vector<std::pair<std::string, std::vector<ParamValue>>> p)
{
	return {mode, std::move(p)};
}

} // namespace

TEST_CASE("cartesian expansion")
{
	const auto runs = expand({{"UWin", 1.0}},
	                         spec(VariationSpec::Mode::Cartesian,
	                              {{"UExt", {0.2, 0.5, 1.0}}, {"airChangeRate", {0.3, 0.6, 0.9}}}));
	REQUIRE(runs.size() == 9);
	// First parameter varies slowest.
	CHECK(std::get<double>(runs[0].at("UExt")) == 0.2);
	CHECK(std::get<double>(runs[1].at("UExt")) == 0.2);
	CHECK(std::get<double>(runs[1].at("airChangeRate")) == 0.6);
	CHECK(std::get<double>(runs[3].at("UExt")) == 0.5);
	CHECK(std::get<double>(runs[8].at("airChangeRate")) == 0.9);
	for (const auto& r : runs)
		CHECK(std::get<double>(r.at("UWin")) == 1.0);

	std::vector<std::pair<std::string, std::vector<ParamValue>>> five;
	for (const char* n : {"UExt", "URoof", "UFloor", "UWin", "airChangeRate"})
		five.emplace_back(n, std::vector<ParamValue>{0.1, 0.2, 0.3});
	CHECK(expand({}, spec(VariationSpec::Mode::Cartesian, five)).size() == 243);
	CHECK(expand({{"UExt", 0.4}}, {}).size() == 1);
}

TEST_CASE("zip expansion")
{
	const auto runs = expand({}, spec(VariationSpec::Mode::Zip,
	                                  {{"UExt", {0.2, 0.5, 1.0}}, {"UWin", {1.1}}, {"URoof", {0.1, 0.2, 0.3}}}));
	REQUIRE(runs.size() == 3);
	CHECK(std::get<double>(runs[2].at("URoof")) == 0.3);
	CHECK(std::get<double>(runs[2].at("UWin")) == 1.1);
	try {
		expand({}, spec(VariationSpec::Mode::Zip, {{"UExt", {0.2, 0.5}}, {"URoof", {0.1, 0.2, 0.3}}}));
		FAIL("expected ZipLengthMismatch");
	} catch (const Error& e) {
		CHECK(e.code() == ErrorCode::ZipLengthMismatch);
	}
	try {
		expand({}, spec(VariationSpec::Mode::Cartesian, {{"UExt", {}}}));
		FAIL("expected EmptyVariationSet");
	} catch (const Error& e) {
		CHECK(e.code() == ErrorCode::EmptyVariationSet);
	}
}

TEST_CASE("range value sources")
{
	auto doc = base_document();
	doc["variations"] = Json::parse(R"({"parameters": {"UExt": {"min": 0.1, "max": 0.5, "step": 0.1}}})");
	const auto plans = plan_runs(parse_config(doc));
	REQUIRE(plans.size() == 5);
	CHECK(std::get<double>(plans[4].building.at("UExt")) == doctest::Approx(0.5));

	doc["variations"] = Json::parse(R"({"parameters": {"UExt": {"min": 0.5, "max": 0.1, "step": 0.1}}})");
	CHECK(config_error(doc) == ErrorCode::EmptyVariationSet);
	doc["variations"] = Json::parse(R"({"parameters": {"UExt": []}})");
	CHECK(config_error(doc) == ErrorCode::EmptyVariationSet);
	doc["variations"] = Json::parse(R"({"mode": "zip", "parameters": {"UExt": [1, 2], "UWin": [1, 2, 3]}})");
	CHECK(config_error(doc) == ErrorCode::ZipLengthMismatch);
}

TEST_CASE("run ids")
{
	const BuildingConfig a{{"UExt", 0.3}}, b{{"UExt", 0.4}};
	const std::regex shape("[0-9]{4}_[0-9a-f]{8}");
	CHECK(std::regex_match(run_id(7, 10, a), shape));
	CHECK(run_id(7, 10, a).starts_with("0007_"));
	CHECK(run_id(7, 10, a) == run_id(7, 10, a));
	CHECK(run_id(7, 10, a) != run_id(7, 10, b));
	CHECK(run_id(12345, 20000, a).starts_with("12345_"));
	CHECK(run_id(3, 20000, a).starts_with("00003_"));
	// The hash depends on content, not on insertion order.
	BuildingConfig x, y;
	x["UExt"] = 0.3;
	x["UWin"] = 1.0;
	y["UWin"] = 1.0;
	y["UExt"] = 0.3;
	CHECK(content_hash(x) == content_hash(y));
}

TEST_CASE("output grid")
{
	auto doc = base_document();
	const auto out = run_doc(doc);
	CHECK(out.rows.size() == 172800 / 3600 + 1);
	const auto t = out.column(Column::Time);
	for (std::size_t k = 0; k < t.size(); ++k)
		CHECK(t[k] == 3600.0 * double(k));
	const auto csv = out.csv();
	CHECK(csv.starts_with("time,t_air,t_out,q_heat"));
	CHECK(std::count(csv.begin(), csv.end(), '\n') == 49 + 1);

	doc["simulation"]["columns"] = Json::array({"t_air", "q_heat"});
	const auto narrow = run_doc(doc);
	CHECK(narrow.csv().starts_with("time,t_air,q_heat\n"));
	CHECK(narrow.column(Column::QHeat) == out.column(Column::QHeat));
}

TEST_CASE("empty schedule matches a plain run")
{
	auto doc = base_document();
	const auto plain = run_doc(doc);
	doc["schedules"] = Json::parse(R"([{"at": 36000, "changes": {}}])");
	const auto scheduled = run_doc(doc);
	CHECK(plain.csv() == scheduled.csv());
	CHECK(scheduled.schedule_log.size() == 1);
}

TEST_CASE("retrofit schedule applies in order")
{
	auto doc = base_document();
	doc["building"]["UExt"] = 1.4;
	doc["building"]["UWin"] = 3.1;
	doc["simulation"]["horizon"] = 3 * 86400;
	doc["weather"]["constant"]["hours"] = 72;
	doc["schedules"] = Json::parse(R"([
		{"at": 86400, "changes": {"UExt": 0.2}},
		{"at": 172800, "changes": {"UWin": 0.9}}
	])");
	const auto out = run_doc(doc);
	REQUIRE(out.schedule_log.size() == 2);
	CHECK(out.schedule_log[0]["changes"]["UExt"] == 0.2);
	CHECK(out.schedule_log[1]["changes"]["UWin"] == 0.9);
	CHECK(std::get<double>(out.final_model.parameters.at("UExt")) == 0.2);
	CHECK(out.final_model.windows.u_value == 0.9);

	// Heating demand at the end of each day steps down after each retrofit.
	const auto q = out.column(Column::QHeat);
	CHECK(q[24] > q[48]);
	CHECK(q[48] > q[72]);
	// Nominal power is kept unless loads are recalculated, so the
	// thermostat can always hold the setpoint.
	CHECK(out.final_model.nominal_heating_power == out.initial_model.nominal_heating_power);

	doc["schedules"] = Json::parse(R"([{"at": 86400, "changes": {"UExt": 0.2}}, {"at": 86400, "changes": {}}])");
	CHECK(config_error(doc) == ErrorCode::ConfigError);
	doc["schedules"] = Json::parse(R"([{"at": 999999, "changes": {"UExt": 0.2}}])");
	WeatherCache cache;
	CHECK_THROWS_AS(simulate(plan_runs(parse_config(doc)).front(), cache), Error);
}

TEST_CASE("recalculated loads follow the retrofit")
{
	auto doc = base_document();
	doc["building"]["UExt"] = 1.4;
	doc["schedules"] = Json::parse(R"([{"at": 86400, "changes": {"UExt": 0.2}, "recalc_loads": true}])");
	const auto recalculated = run_doc(doc);
	doc["schedules"][0]["recalc_loads"] = false;
	const auto kept = run_doc(doc);

	const double before = recalculated.meta["schedule"][0]["nominal_heating_power_before"];
	const double after = recalculated.meta["final_parameters"]["nominal_heating_power"];
	CHECK(after < before);
	CHECK(double(kept.meta["final_parameters"]["nominal_heating_power"]) == before);
	CHECK(double(recalculated.meta["parameters"]["nominal_heating_power"]) == before);
}

TEST_CASE("profile-only change keeps the state continuous")
{
	auto doc = base_document();
	const auto plain = run_doc(doc);
	doc["schedules"] = Json::parse(R"([{"at": 86400, "changes": {"internalGain.fileName": "constant:900"}}])");
	const auto changed = run_doc(doc);
	REQUIRE(changed.rows.size() == plain.rows.size());
	for (std::size_t k = 0; k <= 24; ++k)
		CHECK(changed.rows[k].values == plain.rows[k].values);
	// The zone is held at the setpoint, so more gains mean less heating, not a jump in temperature.
	const auto ta = changed.column(Column::TAir);
	CHECK(std::abs(ta[25] - ta[24]) < 0.5);
	CHECK(changed.rows[30][Column::QGains] == 900.0);
	double heat_changed = 0.0, heat_plain = 0.0;
	for (std::size_t k = 25; k <= 48; ++k) {
		heat_changed += changed.rows[k][Column::QHeat];
		heat_plain += plain.rows[k][Column::QHeat];
	}
	CHECK(heat_changed < heat_plain);
}

TEST_CASE("worker count does not change the bytes")
{
	auto doc = base_document();
	doc["variations"] = Json::parse(R"({"parameters": {"UExt": [0.2, 0.6, 1.2], "airChangeRate": [0.3, 0.8]}})");
	const auto plans = plan_runs(parse_config(doc));
	REQUIRE(plans.size() == 6);
	const auto one = testing::scratch_dir("workers1");
	const auto four = testing::scratch_dir("workers4");
	const auto r1 = run_batch(plans, one, 1);
	const auto r4 = run_batch(plans, four, 4);
	CHECK(r1.failures() == 0);
	CHECK(r4.failures() == 0);
	CHECK(r4.workers == 4);
	for (const auto& p : plans) {
		INFO(p.id);
		for (const char* f : {"data.csv", "meta.json"}) {
			const auto a = slurp(one / "t" / p.id / f);
			CHECK_FALSE(a.empty());
			CHECK(a == slurp(four / "t" / p.id / f));
		}
	}
	const auto report = Json::parse(slurp(one / "t" / "report.json"));
	CHECK(report["runs_total"] == 6);
	CHECK(report["failures"] == 0);
	CHECK(report["runs"][0]["run_id"] == plans[0].id);
}

TEST_CASE("a failing run does not stop the batch")
{
	auto doc = base_document();
	doc["variations"] =
		Json::parse(R"({"parameters": {"weaDat.fileName": ["", "missing.epw", ""], "UExt": [0.5]}, "mode": "zip"})");
	auto plans = plan_runs(parse_config(doc));
	REQUIRE(plans.size() == 3);
	const auto dir = testing::scratch_dir("failure");
	const auto report = run_batch(plans, dir, 2);
	CHECK(report.failures() == 1);
	CHECK(report.runs[0].ok);
	CHECK_FALSE(report.runs[1].ok);
	CHECK(report.runs[1].error.find("missing.epw") != std::string::npos);
	CHECK(report.runs[2].ok);
	CHECK(std::filesystem::exists(dir / "t" / plans[2].id / "data.csv"));
	CHECK_FALSE(std::filesystem::exists(dir / "t" / plans[1].id / "data.csv"));
	CHECK(Json::parse(slurp(dir / "t" / "report.json"))["runs"][1]["status"] == "failed");
}

TEST_CASE("weather from an epw file")
{
	auto doc = base_document();
	doc["weather"] = {{"path", "tiny.epw"}};
	doc["simulation"]["horizon"] = 86400;
	const auto plans = plan_runs(parse_config(doc, THERMSYNTH_TEST_DATA));
	WeatherCache cache;
	const auto out = simulate(plans.front(), cache);
	CHECK(out.meta["weather"]["city"] == "Fixture");
	CHECK(out.meta["weather"]["records"] == 48);
	CHECK(out.rows.size() == 25);
	CHECK(cache.get(plans.front().weather) == cache.get(plans.front().weather));
}

TEST_CASE("meta sidecar contents")
{
	auto doc = base_document();
	doc["building"]["fAInt"] = 0.0;
	const auto out = run_doc(doc);
	const auto& m = out.meta;
	CHECK(m["run_id"].get<std::string>().starts_with("0000_"));
	CHECK(m["parameters"]["UExt"] == 0.75);
	CHECK(m["parameters"].contains("A_floor"));
	CHECK(m["corrections"].size() >= 1);
	CHECK(m["simulation"]["rows"] == out.rows.size());
	CHECK(m["energy"]["heating_J"].get<double>() > 0.0);
	CHECK_FALSE(m.contains("wall_seconds"));
}

TEST_CASE("config documents are validated")
{
	auto bad = base_document();
	bad["extra"] = 1;
	CHECK(config_error(bad) == ErrorCode::ConfigError);

	bad = base_document();
	bad["simulation"]["columns"] = Json::array({"t_air", "humidity"});
	CHECK(config_error(bad) == ErrorCode::ConfigError);

	bad = base_document();
	bad["simulation"]["batch_name"] = "../escape";
	CHECK(config_error(bad) == ErrorCode::ConfigError);

	bad = base_document();
	bad["simulation"]["integrator_step"] = 0;
	CHECK(config_error(bad) == ErrorCode::ConfigError);

	bad = base_document();
	bad["variations"] = {{"mode", "diagonal"}};
	CHECK(config_error(bad) == ErrorCode::ConfigError);

	bad = base_document();
	bad["schedules"] = Json::parse(R"([{"changes": {"UExt": 0.2}}])");
	CHECK(config_error(bad) == ErrorCode::ConfigError);

	bad = base_document();
	bad["building"]["UExt"] = Json::object();
	CHECK(config_error(bad) == ErrorCode::ConfigError);

	const auto dir = testing::scratch_dir("config");
	testing::write_text(dir / "broken.json", "{\"building\": ");
	try {
		load_config(dir / "broken.json");
		FAIL("expected ConfigError");
	} catch (const Error& e) {
		CHECK(e.code() == ErrorCode::ConfigError);
	}
	CHECK_THROWS_AS(load_config(dir / "absent.json"), Error);

	testing::write_text(dir / "sched.json", R"({"schedules": [{"at": 3600, "changes": {"UExt": 0.3}}]})");
	auto doc = base_document();
	doc["schedules"] = "sched.json";
	const auto parsed = parse_config(doc, dir);
	REQUIRE(parsed.schedules.size() == 1);
	CHECK(parsed.schedules[0].at == 3600.0);
}
