#include "thermsynth/cli.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "thermsynth/bestest.hpp"
#include "thermsynth/error.hpp"
#include "thermsynth/orchestrator.hpp"

namespace thermsynth {

namespace {

std::string fixed(double v, int digits)
{
	char buf[64];
	std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
	return buf;
}

std::string pad(std::string s, std::size_t width)
{
	if (s.size() < width)
		s.append(width - s.size(), ' ');
	return s;
}

struct Options {
	std::string config;
	std::string schedules;
	std::string out;
	int workers = 0;
	std::string columns;
	std::optional<std::uint64_t> seed;
	bool quiet = false;
	std::string bestest_case;
	std::string weather;
};

std::vector<RunPlan> load_plans(const Options& o)
{
	ConfigDocument doc = load_config(o.config);
	if (!o.schedules.empty())
		doc.schedules = load_schedules(o.schedules);
	if (!o.columns.empty()) {
		doc.simulation.columns.clear();
		std::stringstream ss(o.columns);
		std::string name;
		while (std::getline(ss, name, ',')) {
			const auto c = parse_column(name);
			if (!c)
				throw Error(ErrorCode::ConfigError, "unknown output column '" + name + "'");
			doc.simulation.columns.push_back(*c);
		}
		if (doc.simulation.columns.empty() || doc.simulation.columns.front() != Column::Time)
			doc.simulation.columns.insert(doc.simulation.columns.begin(), Column::Time);
	}
	if (o.seed)
		doc.simulation.seed = *o.seed;
	return plan_runs(doc);
}

int cmd_run(const Options& o, std::ostream& out, std::ostream& err)
{
	const auto plans = load_plans(o);
	const int workers = o.workers > 0 ? o.workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
	const BatchReport report = run_batch(plans, o.out, workers);
	for (const auto& r : report.runs)
		if (!r.ok)
			err << "run " << r.id << " failed: " << r.error << "\n";
	if (!o.quiet) {
		out << pad("runs", 8) << pad("failures", 10) << pad("mean sim time [s]", 19) << "wall time [s]\n";
		out << pad(std::to_string(report.runs.size()), 8) << pad(std::to_string(report.failures()), 10)
		    << pad(fixed(report.mean_run_seconds(), 3), 19) << fixed(report.wall_seconds, 3) << "\n";
	}
	return report.failures() == 0 ? 0 : 1;
}

int cmd_validate(const Options& o, std::ostream& out)
{
	const auto plans = load_plans(o);
	for (const auto& plan : plans) {
		const ResolvedModel m = resolve(plan.building);
		if (o.quiet)
			continue;
		out << "# run " << plan.id << "\n";
		for (const auto& [name, value] : m.parameters)
			out << name << " = " << describe(value) << "\n";
		for (const auto& c : m.corrections)
			out << "# corrected " << c << "\n";
	}
	return 0;
}

int cmd_list_profiles(const Options& o, std::ostream& out)
{
	if (o.quiet)
		return 0;
	out << "Wall construction profiles:\n";
	out << "  " << pad("name", 26) << pad("U [W/(m2K)]", 13) << "capacity [kJ/(m2K)]\n";
	for (const auto& p : wall_profiles())
		out << "  " << pad(p.name, 26) << pad(describe(p.u_value), 13) << describe(p.heat_capacity) << "\n";
	out << "Internal gain archetypes:\n";
	for (const auto& name : archetype_names())
		out << "  " << name << "\n";
	out << "R/C distribution profiles:\n  uniform\n  mass-inside\n  mass-outside\n";
	return 0;
}

int cmd_bestest(const Options& o, std::ostream& out)
{
	const BestestResult r = run_bestest(o.bestest_case, o.weather);
	if (!o.quiet) {
		out << r.case_name << " (" << fixed(r.seconds, 1) << " s)\n";
		for (const auto& m : r.metrics)
			out << "  " << pad(m.name, 21) << pad(fixed(m.value, 3) + " " + m.unit, 14) << pad("[" + describe(m.min) + ", " + describe(m.max) + "]", 18)
			    << (m.pass() ? "PASS" : "FAIL") << "\n";
	}
	return r.pass() ? 0 : 1;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Synthetic building thermal data generator"};
	app.require_subcommand(1);
	app.fallthrough();
	Options o;
	app.add_flag("-q,--quiet", o.quiet, "Suppress all non-error output");

	auto* run = app.add_subcommand("run", "Simulate every variation of a config document");
	run->add_option("--config", o.config, "Config document (JSON)")->required();
	run->add_option("--out", o.out, "Output directory")->required();
	run->add_option("--schedules", o.schedules, "Operational schedule file (JSON)");
	run->add_option("--workers", o.workers, "Worker threads (default: all cores)")->check(CLI::PositiveNumber);
	run->add_option("--columns", o.columns, "Comma-separated output columns");
	run->add_option("--seed", o.seed, "Profile generation seed");

	auto* validate = app.add_subcommand("validate-config", "Resolve a config document and print its parameters");
	validate->add_option("--config", o.config, "Config document (JSON)")->required();
	validate->add_option("--schedules", o.schedules, "Operational schedule file (JSON)");
	validate->add_option("--seed", o.seed, "Profile generation seed");

	auto* list = app.add_subcommand("list-profiles", "List wall profiles and gain archetypes");

	auto* bestest = app.add_subcommand("bestest", "Run a bundled ASHRAE 140 test case");
	bestest->add_option("case", o.bestest_case, "TC600, TC900, TC600FF or TC900FF")
		->required()
		->check(CLI::IsMember(bestest_cases()));
	bestest->add_option("--weather", o.weather, "Denver-area EPW weather file")->required();

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e, out, err);
		return code == 0 ? 0 : 2;
	}

	try {
		if (*run)
			return cmd_run(o, out, err);
		if (*validate)
			return cmd_validate(o, out);
		if (*list)
			return cmd_list_profiles(o, out);
		if (*bestest)
			return cmd_bestest(o, out);
	} catch (const std::exception& e) {
		err << "error: " << e.what() << "\n";
		return 2;
	}
	return 2;
}

} // namespace thermsynth
