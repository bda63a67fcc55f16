#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include "thermsynth/error.hpp"
#include "thermsynth/detail/text.hpp"
#include "thermsynth/orchestrator.hpp"

namespace thermsynth {

namespace {

constexpr const char* kEngineVersion = "0.1.0";

std::filesystem::path resolve_path(const std::filesystem::path& base, const std::string& p)
{
	std::filesystem::path path(p);
	return path.is_relative() ? base / path : path;
}

std::string text_param(const ResolvedModel& m, const std::string& name)
{
	return std::get<std::string>(m.parameters.at(name));
}

class SignalFactory {
public:
	SignalFactory(std::filesystem::path base, std::uint64_t seed) : mBase(std::move(base)), mSeed(seed) {}

	std::shared_ptr<const Profile> make(const std::string& ref, ProfileKind kind)
	{
		if (ref.empty() || ref == "none")
			return nullptr;
		if (ref.starts_with("constant:")) {
			const auto v = detail::parse_double(std::string_view(ref).substr(9));
			if (!v)
				throw Error(ErrorCode::InvalidParameter, "bad constant profile '" + ref + "'");
			if (*v < 0.0 || (kind == ProfileKind::Window && *v > 1.0))
				throw Error(ErrorCode::OutOfRangeValue, "constant profile value out of range: " + ref);
			return std::make_shared<const Profile>(kProfileStep, std::vector<double>{*v});
		}
		if (ref.starts_with("archetype:")) {
			const std::string name = ref.substr(10);
			if (!mArchetypes.count(name)) {
				const auto year = archetype(name, mSeed);
				mArchetypes[name] = {std::make_shared<const Profile>(year.gains),
				                     std::make_shared<const Profile>(year.windows)};
			}
			const auto& pair = mArchetypes[name];
			return kind == ProfileKind::Gain ? pair.first : pair.second;
		}
		return std::make_shared<const Profile>(load_profile_csv(resolve_path(mBase, ref), kind));
	}

	ScheduleSignals signals(const ResolvedModel& m)
	{
		return {make(text_param(m, "internalGain.fileName"), ProfileKind::Gain),
		        make(text_param(m, "hygienicalWindowOpening.fileName"), ProfileKind::Window)};
	}

private:
	std::filesystem::path mBase;
	std::uint64_t mSeed;
	std::map<std::string, std::pair<std::shared_ptr<const Profile>, std::shared_ptr<const Profile>>> mArchetypes;
};

std::unique_ptr<ExternalController> make_controller(const ControllerConfig& c)
{
	if (c.type == ControllerConfig::Type::TwoPoint)
		return std::make_unique<TwoPointController>(c.day_setpoint, c.night_setpoint, c.hysteresis, c.day_start_hour,
		                                            c.day_end_hour);
	Actuation a;
	a.u_heat = c.u_heat;
	a.u_cool = c.u_cool;
	return std::make_unique<ConstantController>(a);
}

Json energy_json(const EnergyTotals& e)
{
	Json j;
	j["heating_J"] = e.heating;
	j["cooling_J"] = e.cooling;
	j["electrical_J"] = e.electrical;
	j["internal_gains_J"] = e.internal_gains;
	j["solar_J"] = e.solar;
	j["losses_J"] = e.losses;
	j["ventilation_J"] = e.ventilation;
	return j;
}

Json params_json(const ParamMap& p)
{
	Json j = Json::object();
	for (const auto& [k, v] : p)
		j[k] = param_to_json(v);
	return j;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
	std::ofstream f(path, std::ios::binary);
	if (!f || !(f << content))
		throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

} // namespace

std::shared_ptr<const WeatherSeries> WeatherCache::get(const WeatherSource& source)
{
	std::string key;
	if (source.constant) {
		const auto& c = *source.constant;
		key = "constant:" + describe(c.dry_bulb) + ":" + describe(c.direct_normal) + ":" +
		      describe(c.diffuse_horizontal) + ":" + std::to_string(c.hours) + ":" + describe(source.site.latitude) +
		      ":" + describe(source.site.longitude) + ":" + describe(source.site.timezone_offset);
	} else {
		if (source.path.empty())
			throw Error(ErrorCode::ConfigError, "no weather source configured");
		key = "file:" + source.path.lexically_normal().string();
	}
	std::lock_guard lock(mMutex);
	if (auto it = mFiles.find(key); it != mFiles.end())
		return it->second;
	std::shared_ptr<const WeatherSeries> series;
	if (source.constant) {
		const auto& c = *source.constant;
		series = std::make_shared<const WeatherSeries>(
			constant_weather(c.dry_bulb, c.direct_normal, c.diffuse_horizontal, source.site, c.hours));
	} else {
		series = std::make_shared<const WeatherSeries>(load_epw(source.path));
	}
	mFiles.emplace(key, series);
	return series;
}

std::string SimOutput::csv() const
{
	std::string out;
	for (std::size_t i = 0; i < columns.size(); ++i) {
		if (i)
			out.push_back(',');
		out += column_name(columns[i]);
	}
	out.push_back('\n');
	out.reserve(out.size() + rows.size() * columns.size() * 12);
	for (const auto& row : rows) {
		for (std::size_t i = 0; i < columns.size(); ++i) {
			if (i)
				out.push_back(',');
			detail::append_double(out, row[columns[i]]);
		}
		out.push_back('\n');
	}
	return out;
}

std::vector<double> SimOutput::column(Column c) const
{
	std::vector<double> v;
	v.reserve(rows.size());
	for (const auto& r : rows)
		v.push_back(r[c]);
	return v;
}

SimOutput simulate(const RunPlan& plan, WeatherCache& cache)
{
	BuildingConfig building = plan.building;
	ResolvedModel model = resolve(building);

	WeatherSource source = plan.weather;
	if (const auto file = text_param(model, "weaDat.fileName"); !file.empty()) {
		source = {};
		source.path = resolve_path(plan.base_dir, file);
	}
	const auto weather = cache.get(source);
	const auto& sim_cfg = plan.simulation;
	const double horizon = sim_cfg.horizon.value_or(weather->duration());
	for (const auto& change : plan.schedules)
		if (change.at > horizon)
			throw Error(ErrorCode::ConfigError, "operational change at " + describe(change.at) + " s lies beyond the horizon");

	SignalFactory factory(plan.base_dir, sim_cfg.seed);
	std::unique_ptr<ExternalController> controller;
	if (model.controller.mode == ControllerMode::External)
		controller = make_controller(sim_cfg.external_controller);

	SimOutput out;
	out.columns = sim_cfg.columns.empty() ? default_columns() : sim_cfg.columns;
	out.initial_model = model;
	Simulator sim(model, weather, sim_cfg.settings, factory.signals(model), controller.get());
	const auto push = [&](const Sample& s) { out.rows.push_back(s); };
	push(sim.sample());

	for (const auto& change : plan.schedules) {
		sim.advance(change.at, push);
		for (const auto& [k, v] : change.changes)
			building[k] = v;
		const double before_heat = sim.model().nominal_heating_power;
		ResolvedModel next = resolve_update(building, sim.model(), change.recalc_loads);
		if (next.controller.mode == ControllerMode::External && sim.model().controller.mode != ControllerMode::External)
			throw Error(ErrorCode::ConfigError, "switching to an external controller mid-run is not supported");
		const bool profiles_changed =
			text_param(next, "internalGain.fileName") != text_param(sim.model(), "internalGain.fileName") ||
			text_param(next, "hygienicalWindowOpening.fileName") !=
				text_param(sim.model(), "hygienicalWindowOpening.fileName");
		if (profiles_changed)
			sim.set_signals(factory.signals(next));
		sim.set_model(next);

		Json log;
		log["at"] = change.at;
		log["changes"] = params_json(change.changes);
		log["recalc_loads"] = change.recalc_loads;
		log["nominal_heating_power_before"] = before_heat;
		log["nominal_heating_power"] = next.nominal_heating_power;
		log["nominal_cooling_power"] = next.nominal_cooling_power;
		out.schedule_log.push_back(std::move(log));
	}
	sim.advance(horizon, push);
	out.final_model = sim.model();
	out.energy = sim.state().energy;

	Json meta;
	meta["run_id"] = plan.id;
	meta["index"] = plan.index;
	meta["seed"] = sim_cfg.seed;
	meta["engine"] = {{"name", "thermsynth"}, {"version", kEngineVersion}};
	Json sim_json;
	sim_json["horizon"] = horizon;
	sim_json["output_interval"] = sim_cfg.settings.output_interval;
	sim_json["integrator_step"] = sim_cfg.settings.integrator_step;
	sim_json["warmup"] = sim_cfg.settings.warmup;
	sim_json["initial_temperature"] = sim_cfg.settings.initial_temperature;
	Json cols = Json::array();
	for (auto c : out.columns)
		cols.push_back(std::string(column_name(c)));
	sim_json["columns"] = cols;
	sim_json["rows"] = out.rows.size();
	meta["simulation"] = sim_json;
	Json w;
	w["source"] = source.constant ? std::string("constant") : source.path.generic_string();
	w["city"] = weather->city;
	w["latitude"] = weather->site.latitude;
	w["longitude"] = weather->site.longitude;
	w["timezone"] = weather->site.timezone_offset;
	w["records"] = weather->records.size();
	meta["weather"] = w;
	meta["parameters"] = params_json(out.initial_model.parameters);
	meta["corrections"] = out.initial_model.corrections;
	meta["schedule"] = out.schedule_log;
	meta["final_parameters"] = params_json(out.final_model.parameters);
	meta["energy"] = energy_json(out.energy);
	out.meta = std::move(meta);
	return out;
}

RunResult run_one(const RunPlan& plan, const std::filesystem::path& directory, WeatherCache& weather)
{
	RunResult r;
	r.id = plan.id;
	r.directory = directory;
	const auto t0 = std::chrono::steady_clock::now();
	try {
		const SimOutput out = simulate(plan, weather);
		std::filesystem::create_directories(directory);
		write_file(directory / "data.csv", out.csv());
		write_file(directory / "meta.json", out.meta.dump(2) + "\n");
		r.ok = true;
	} catch (const std::exception& e) {
		r.ok = false;
		r.error = e.what();
	}
	r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	return r;
}

std::size_t BatchReport::failures() const
{
	std::size_t n = 0;
	for (const auto& r : runs)
		n += r.ok ? 0 : 1;
	return n;
}

double BatchReport::mean_run_seconds() const
{
	if (runs.empty())
		return 0.0;
	double s = 0.0;
	for (const auto& r : runs)
		s += r.seconds;
	return s / static_cast<double>(runs.size());
}

Json BatchReport::to_json() const
{
	Json j;
	j["runs_total"] = runs.size();
	j["failures"] = failures();
	j["workers"] = workers;
	j["wall_seconds"] = wall_seconds;
	j["mean_run_seconds"] = mean_run_seconds();
	Json list = Json::array();
	for (const auto& r : runs) {
		Json e;
		e["run_id"] = r.id;
		e["status"] = r.ok ? "ok" : "failed";
		if (!r.ok)
			e["error"] = r.error;
		e["seconds"] = r.seconds;
		list.push_back(std::move(e));
	}
	j["runs"] = std::move(list);
	return j;
}

BatchReport run_batch(const std::vector<RunPlan>& plans, const std::filesystem::path& out_root, int workers)
{
	BatchReport report;
	report.workers = std::max(1, workers);
	report.runs.resize(plans.size());
	const std::string batch = plans.empty() ? std::string("batch") : plans.front().simulation.batch_name;
	const auto batch_dir = out_root / batch;
	std::filesystem::create_directories(batch_dir);

	WeatherCache cache;
	std::atomic<std::size_t> next{0};
	const auto t0 = std::chrono::steady_clock::now();
	auto worker = [&] {
		for (std::size_t i = next++; i < plans.size(); i = next++)
			report.runs[i] = run_one(plans[i], batch_dir / plans[i].id, cache);
	};
	const int n = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(report.workers), plans.size()));
	std::vector<std::thread> pool;
	for (int k = 1; k < n; ++k)
		pool.emplace_back(worker);
	worker();
	for (auto& t : pool)
		t.join();
	report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	write_file(batch_dir / "report.json", report.to_json().dump(2) + "\n");
	return report;
}

} // namespace thermsynth
