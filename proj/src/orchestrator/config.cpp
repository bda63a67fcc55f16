#include <cmath>
#include <fstream>

#include "thermsynth/error.hpp"
#include "thermsynth/orchestrator.hpp"

namespace thermsynth {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

Json read_json(const std::filesystem::path& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw Error(ErrorCode::IoError, "cannot open " + path.string());
	try {
		return Json::parse(in);
	} catch (const Json::exception& e) {
		config_error(path.string() + ": " + e.what());
	}
}

void check_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
	if (!obj.is_object())
		config_error("'" + where + "' must be an object");
	for (const auto& [key, _] : obj.items()) {
		bool ok = false;
		for (const char* a : allowed)
			ok = ok || key == a;
		if (!ok)
			config_error("unknown key '" + key + "' in '" + where + "'");
	}
}

double number(const Json& v, const std::string& what)
{
	if (!v.is_number())
		config_error("'" + what + "' must be a number");
	return v.get<double>();
}

std::vector<ParamValue> value_source(const Json& src, const std::string& name)
{
	std::vector<ParamValue> values;
	if (src.is_array()) {
		for (const auto& v : src)
			values.push_back(param_from_json(v, name));
	} else if (src.is_object()) {
		check_keys(src, "variations." + name, {"min", "max", "step"});
		if (!src.contains("min") || !src.contains("max") || !src.contains("step"))
			config_error("range for '" + name + "' needs min, max and step");
		const double lo = number(src["min"], name + ".min");
		const double hi = number(src["max"], name + ".max");
		const double step = number(src["step"], name + ".step");
		if (!(step > 0.0) || hi < lo)
			throw Error(ErrorCode::EmptyVariationSet, "range for '" + name + "' is empty");
		const auto n = static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
		for (long long k = 0; k < n; ++k)
			values.emplace_back(lo + static_cast<double>(k) * step);
	} else {
		values.push_back(param_from_json(src, name));
	}
	if (values.empty())
		throw Error(ErrorCode::EmptyVariationSet, "no values given for '" + name + "'");
	return values;
}

ControllerConfig parse_controller(const Json& j)
{
	check_keys(j, "external_controller",
	           {"type", "u_heat", "u_cool", "setpoint", "night_setpoint", "hysteresis", "day_start_hour",
	            "day_end_hour"});
	ControllerConfig c;
	const std::string type = j.value("type", "constant");
	if (type == "constant")
		c.type = ControllerConfig::Type::Constant;
	else if (type == "two_point")
		c.type = ControllerConfig::Type::TwoPoint;
	else
		config_error("unknown external controller type '" + type + "'");
	c.u_heat = j.contains("u_heat") ? number(j["u_heat"], "u_heat") : c.u_heat;
	c.u_cool = j.contains("u_cool") ? number(j["u_cool"], "u_cool") : c.u_cool;
	c.day_setpoint = j.contains("setpoint") ? number(j["setpoint"], "setpoint") : c.day_setpoint;
	c.night_setpoint = j.contains("night_setpoint") ? number(j["night_setpoint"], "night_setpoint") : c.day_setpoint;
	c.hysteresis = j.contains("hysteresis") ? number(j["hysteresis"], "hysteresis") : c.hysteresis;
	c.day_start_hour = j.contains("day_start_hour") ? number(j["day_start_hour"], "day_start_hour") : c.day_start_hour;
	c.day_end_hour = j.contains("day_end_hour") ? number(j["day_end_hour"], "day_end_hour") : c.day_end_hour;
	return c;
}

SimulationConfig parse_simulation(const Json& j)
{
	check_keys(j, "simulation",
	           {"horizon", "output_interval", "integrator_step", "columns", "seed", "batch_name",
	            "initial_temperature", "warmup", "external_controller"});
	SimulationConfig s;
	if (j.contains("horizon")) {
		const auto& h = j["horizon"];
		if (h.is_string() && h.get<std::string>() == "year")
			s.horizon.reset();
		else if (number(h, "horizon") > 0.0)
			s.horizon = h.get<double>();
		else
			config_error("'horizon' must be positive or \"year\"");
	}
	auto& st = s.settings;
	st.output_interval = j.contains("output_interval") ? number(j["output_interval"], "output_interval") : 900.0;
	st.integrator_step = j.contains("integrator_step") ? number(j["integrator_step"], "integrator_step") : 60.0;
	st.initial_temperature =
		j.contains("initial_temperature") ? number(j["initial_temperature"], "initial_temperature") : 20.0;
	st.warmup = j.contains("warmup") ? number(j["warmup"], "warmup") : 0.0;
	if (!(st.output_interval > 0.0) || !(st.integrator_step > 0.0) || st.warmup < 0.0)
		config_error("output interval and integrator step must be positive");
	if (j.contains("columns")) {
		if (!j["columns"].is_array())
			config_error("'columns' must be a list of names");
		for (const auto& c : j["columns"]) {
			const auto col = c.is_string() ? parse_column(c.get<std::string>()) : std::nullopt;
			if (!col)
				config_error("unknown output column " + c.dump());
			s.columns.push_back(*col);
		}
	}
	if (s.columns.empty())
		s.columns = default_columns();
	if (s.columns.front() != Column::Time)
		s.columns.insert(s.columns.begin(), Column::Time);
	if (j.contains("seed")) {
		if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
			config_error("'seed' must be a non-negative integer");
		s.seed = j["seed"].get<std::uint64_t>();
	}
	if (j.contains("batch_name")) {
		s.batch_name = j["batch_name"].get<std::string>();
		if (s.batch_name.empty() || s.batch_name.find_first_of("/\\") != std::string::npos || s.batch_name == ".." ||
		    s.batch_name == ".")
			config_error("'batch_name' must be a plain directory name");
	}
	if (j.contains("external_controller"))
		s.external_controller = parse_controller(j["external_controller"]);
	return s;
}

WeatherSource parse_weather(const Json& j)
{
	check_keys(j, "weather", {"path", "constant", "latitude", "longitude", "timezone"});
	WeatherSource w;
	if (j.contains("path"))
		w.path = j["path"].get<std::string>();
	if (j.contains("constant")) {
		const auto& c = j["constant"];
		check_keys(c, "weather.constant", {"dry_bulb", "direct_normal", "diffuse_horizontal", "hours"});
		WeatherSource::Constant k;
		k.dry_bulb = c.contains("dry_bulb") ? number(c["dry_bulb"], "dry_bulb") : 0.0;
		k.direct_normal = c.contains("direct_normal") ? number(c["direct_normal"], "direct_normal") : 0.0;
		k.diffuse_horizontal =
			c.contains("diffuse_horizontal") ? number(c["diffuse_horizontal"], "diffuse_horizontal") : 0.0;
		if (c.contains("hours")) {
			if (!c["hours"].is_number_integer() || c["hours"].get<long long>() <= 0)
				config_error("'weather.constant.hours' must be a positive integer");
			k.hours = c["hours"].get<std::size_t>();
		}
		w.constant = k;
	}
	w.site.latitude = j.contains("latitude") ? number(j["latitude"], "latitude") : w.site.latitude;
	w.site.longitude = j.contains("longitude") ? number(j["longitude"], "longitude") : w.site.longitude;
	w.site.timezone_offset = j.contains("timezone") ? number(j["timezone"], "timezone") : w.site.timezone_offset;
	return w;
}

} // namespace

std::vector<Column> default_columns()
{
	std::vector<Column> cols;
	for (std::size_t i = 0; i < kDefaultColumnCount; ++i)
		cols.push_back(static_cast<Column>(i));
	return cols;
}

ParamValue param_from_json(const Json& v, const std::string& name)
{
	if (v.is_boolean())
		return v.get<bool>();
	if (v.is_number())
		return v.get<double>();
	if (v.is_string())
		return v.get<std::string>();
	if (v.is_array()) {
		std::vector<double> out;
		for (const auto& x : v) {
			if (!x.is_number())
				config_error("'" + name + "' must be a list of numbers");
			out.push_back(x.get<double>());
		}
		return out;
	}
	config_error("'" + name + "' has an unsupported value " + v.dump());
}

Json param_to_json(const ParamValue& value)
{
	return std::visit([](const auto& v) { return Json(v); }, value);
}

std::vector<OperationalChange> parse_schedules(const Json& schedules)
{
	if (!schedules.is_array())
		config_error("'schedules' must be a list");
	std::vector<OperationalChange> out;
	for (const auto& s : schedules) {
		check_keys(s, "schedules[]", {"at", "changes", "recalc_loads"});
		OperationalChange c;
		if (!s.contains("at"))
			config_error("schedule entry without 'at'");
		c.at = number(s["at"], "at");
		if (s.contains("changes")) {
			if (!s["changes"].is_object())
				config_error("'changes' must be an object");
			for (const auto& [k, v] : s["changes"].items())
				c.changes[k] = param_from_json(v, k);
		}
		if (s.contains("recalc_loads")) {
			if (!s["recalc_loads"].is_boolean())
				config_error("'recalc_loads' must be a boolean");
			c.recalc_loads = s["recalc_loads"].get<bool>();
		}
		if (!(c.at > 0.0) || (!out.empty() && !(c.at > out.back().at)))
			config_error("schedule timestamps must be positive and strictly increasing");
		out.push_back(std::move(c));
	}
	return out;
}

std::vector<OperationalChange> load_schedules(const std::filesystem::path& path)
{
	Json j = read_json(path);
	if (j.is_object() && j.contains("schedules"))
		j = j["schedules"];
	return parse_schedules(j);
}

ConfigDocument parse_config(const Json& document, const std::filesystem::path& base_dir)
{
	check_keys(document, "document", {"building", "variations", "schedules", "simulation", "weather"});
	ConfigDocument doc;
	doc.base_dir = base_dir;
	if (document.contains("building")) {
		if (!document["building"].is_object())
			config_error("'building' must be an object");
		for (const auto& [k, v] : document["building"].items())
			doc.building[k] = param_from_json(v, k);
	}
	if (document.contains("variations")) {
		const auto& v = document["variations"];
		check_keys(v, "variations", {"mode", "parameters"});
		const std::string mode = v.value("mode", "cartesian");
		if (mode == "cartesian")
			doc.variations.mode = VariationSpec::Mode::Cartesian;
		else if (mode == "zip")
			doc.variations.mode = VariationSpec::Mode::Zip;
		else
			config_error("variation mode must be 'cartesian' or 'zip'");
		if (v.contains("parameters")) {
			if (!v["parameters"].is_object())
				config_error("'variations.parameters' must be an object");
			for (const auto& [k, src] : v["parameters"].items())
				doc.variations.parameters.emplace_back(k, value_source(src, k));
		}
	}
	if (document.contains("schedules")) {
		const auto& s = document["schedules"];
		doc.schedules = s.is_string() ? load_schedules(base_dir / s.get<std::string>()) : parse_schedules(s);
	}
	if (document.contains("simulation"))
		doc.simulation = parse_simulation(document["simulation"]);
	else
		doc.simulation.columns = default_columns();
	if (document.contains("weather"))
		doc.weather = parse_weather(document["weather"]);
	if (!doc.weather.path.empty() && doc.weather.path.is_relative())
		doc.weather.path = base_dir / doc.weather.path;
	return doc;
}

ConfigDocument load_config(const std::filesystem::path& path)
{
	return parse_config(read_json(path), path.parent_path());
}

} // namespace thermsynth
