#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "support.hpp"

#include "thermsynth/cli.hpp"

namespace {

struct Result {
	int code;
	std::string out, err;
};

Result cli(std::vector<std::string> args)
{
	args.insert(args.begin(), "thermsynth");
	std::vector<const char*> argv;
	for (const auto& a : args)
		argv.push_back(a.c_str());
	std::ostringstream out, err;
	const int code = thermsynth::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
	return {code, out.str(), err.str()};
}

const char* kOneDay = R"({
	"building": {"internalGain.fileName": "archetype:CHR01", "UExt": 0.5},
	"simulation": {"horizon": 86400, "batch_name": "day"},
	"weather": {"path": "tiny.epw"}
})";

std::filesystem::path one_day_config(const std::filesystem::path& dir, const std::string& text = kOneDay)
{
	std::filesystem::copy_file(std::filesystem::path(THERMSYNTH_TEST_DATA) / "tiny.epw", dir / "tiny.epw",
	                           std::filesystem::copy_options::overwrite_existing);
	testing::write_text(dir / "config.json", text);
	return dir / "config.json";
}

std::size_t count_files(const std::filesystem::path& dir, const std::string& name)
{
	std::size_t n = 0;
	for (const auto& e : std::filesystem::recursive_directory_iterator(dir))
		n += e.path().filename() == name;
	return n;
}

} // namespace

TEST_CASE("cli list-profiles")
{
	const auto r = cli({"list-profiles"});
	CHECK(r.code == 0);
	CHECK(r.out.find("Solid brick") != std::string::npos);
	CHECK(r.out.find("CHR52_Student_Flatsharing") != std::string::npos);
	CHECK(r.out.find("mass-inside") != std::string::npos);
	CHECK(cli({"--quiet", "list-profiles"}).out.empty());
}

TEST_CASE("cli run writes one csv per variation")
{
	const auto dir = testing::scratch_dir("cli-run");
	const auto config = one_day_config(dir);
	const auto r = cli({"run", "--config", config.string(), "--out", (dir / "out").string(), "--workers", "2"});
	CHECK(r.code == 0);
	CHECK(r.err.empty());
	CHECK(r.out.find("runs") != std::string::npos);
	CHECK(count_files(dir / "out", "data.csv") == 1);
	CHECK(std::filesystem::exists(dir / "out" / "day" / "report.json"));

	const auto q = cli({"-q", "run", "--config", config.string(), "--out", (dir / "quiet").string(), "--columns",
	                    "t_air,q_heat", "--seed", "9"});
	CHECK(q.code == 0);
	CHECK(q.out.empty());
	CHECK(count_files(dir / "quiet", "data.csv") == 1);
}

TEST_CASE("cli exit codes")
{
	const auto dir = testing::scratch_dir("cli-codes");
	const auto config = one_day_config(dir);

	CHECK(cli({}).code == 2);
	CHECK(cli({"frobnicate"}).code == 2);
	CHECK(cli({"run", "--config", config.string()}).code == 2);
	CHECK(cli({"run", "--config", (dir / "nope.json").string(), "--out", dir.string()}).code == 2);
	CHECK(cli({"run", "--config", config.string(), "--out", dir.string(), "--columns", "t_air,wind"}).code == 2);
	CHECK(cli({"run", "--config", config.string(), "--out", dir.string(), "--workers", "0"}).code == 2);
	CHECK(cli({"bestest", "TC123", "--weather", "x.epw"}).code == 2);
	CHECK(cli({"--help"}).code == 0);

	// A variation that cannot be simulated fails its run but not the batch.
	const auto failing = one_day_config(dir, R"({
		"building": {"UExt": 0.5},
		"variations": {"mode": "zip", "parameters": {"weaDat.fileName": ["tiny.epw", "gone.epw"]}},
		"simulation": {"horizon": 86400, "batch_name": "mixed"}
	})");
	const auto r = cli({"run", "--config", failing.string(), "--out", (dir / "out").string()});
	CHECK(r.code == 1);
	CHECK(r.err.find("gone.epw") != std::string::npos);
	CHECK(count_files(dir / "out" / "mixed", "data.csv") == 1);

	const auto invalid = one_day_config(dir, R"({"building": {"UWall": 1.0}, "weather": {"path": "tiny.epw"}})");
	const auto v = cli({"validate-config", "--config", invalid.string()});
	CHECK(v.code == 2);
	CHECK(v.err.find("UWall") != std::string::npos);
}

TEST_CASE("cli validate-config prints resolved parameters")
{
	const auto dir = testing::scratch_dir("cli-validate");
	const auto config = one_day_config(dir);
	const auto r = cli({"validate-config", "--config", config.string()});
	CHECK(r.code == 0);
	CHECK(r.out.find("UExt = 0.5") != std::string::npos);
	CHECK(r.out.find("nominal_heating_power = ") != std::string::npos);
}
