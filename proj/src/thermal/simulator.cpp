#include "thermsynth/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "thermsynth/error.hpp"

namespace thermsynth {

namespace {

constexpr std::array<std::string_view, kColumnCount> kColumnNames = {
	"time",  "t_air",       "t_out",    "q_heat", "q_cool",   "p_electric",    "q_vent",
	"q_sol_trans", "u_heat", "u_cool", "window_open", "t_supply", "cop", "t_radiant",
	"q_gains", "direct_normal", "diffuse_horizontal",
};

constexpr int kMaxRegimeIterations = 8;

long long whole_steps(double span, double step, const char* what)
{
	const double ratio = span / step;
	const long long n = std::llround(ratio);
	if (!std::isfinite(ratio) || std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, std::abs(ratio)))
		throw Error(ErrorCode::InvalidParameter, std::string(what) + " must be a multiple of the integrator step");
	return n;
}

double seconds_of_day(double t)
{
	const double s = std::fmod(t, 86400.0);
	return s < 0.0 ? s + 86400.0 : s;
}

// 0: off, 1: proportional, 2: saturated.
int regime(double u)
{
	if (u <= 0.0)
		return 0;
	return u >= 1.0 ? 2 : 1;
}

} // namespace

std::string_view column_name(Column c) { return kColumnNames[static_cast<std::size_t>(c)]; }

std::optional<Column> parse_column(std::string_view name)
{
	for (std::size_t i = 0; i < kColumnCount; ++i)
		if (kColumnNames[i] == name)
			return static_cast<Column>(i);
	return std::nullopt;
}

Simulator::Simulator(const ResolvedModel& model, std::shared_ptr<const WeatherSeries> weather,
                     SimulationSettings settings, ScheduleSignals signals, ExternalController* controller)
	: mModel(model), mWeather(weather), mSampler(std::move(weather), model.albedo), mSettings(settings),
	  mSignals(std::move(signals)), mController(controller)
{
	if (!(mSettings.integrator_step > 0.0))
		throw Error(ErrorCode::InvalidParameter, "integrator step must be positive");
	mStepsPerOutput = whole_steps(mSettings.output_interval, mSettings.integrator_step, "output interval");
	mStepsPerControl = whole_steps(mModel.controller.control_interval, mSettings.integrator_step, "control interval");
	if (mStepsPerOutput < 1 || mStepsPerControl < 1)
		throw Error(ErrorCode::InvalidParameter, "output and control intervals must be positive");
	if (mModel.controller.mode == ControllerMode::External && !mController)
		throw Error(ErrorCode::InvalidParameter, "external controller mode requires a controller");

	rebuild();
	mState = ZoneState::uniform(*mNetwork, mSettings.initial_temperature);

	if (mSettings.warmup > 0.0)
		mStepIndex = -whole_steps(mSettings.warmup, mSettings.integrator_step, "warm-up");

	if (mModel.controller.mode == ControllerMode::InternalProportional) {
		const double t = time();
		mQHeat = mModel.nominal_heating_power *
		         internal_controller(mModel.controller, mState.air_temperature(), seconds_of_day(t));
		if (mModel.controller.cooling_enabled)
			mQCool = mModel.nominal_cooling_power *
			         std::clamp((mState.air_temperature() - mModel.controller.cooling_setpoint) /
			                        mModel.controller.proportional_band,
			                    0.0, 1.0);
	}
	poll_controller();

	if (mStepIndex < 0) {
		advance(0.0);
		mState.energy = {};
	}
}

void Simulator::rebuild()
{
	if (!(mModel.controller.proportional_band > 0.0))
		throw Error(ErrorCode::InvalidParameter, "proportional band must be positive");
	mNetwork = std::make_shared<const ThermalNetwork>(assemble_network(mModel));
	mIntegrator = std::make_unique<TrapezoidalIntegrator>(mNetwork, mSettings.integrator_step);
}

void Simulator::set_model(const ResolvedModel& model)
{
	const auto old = mState.temperatures;
	const double t_air = mState.air_temperature();
	const double t_rad = mState.radiant_temperature();
	const std::size_t old_components = (old.size() - 2) / 3;

	mModel = model;
	rebuild();
	mStepsPerControl = whole_steps(mModel.controller.control_interval, mSettings.integrator_step, "control interval");

	auto& x = mState.temperatures;
	x.assign(mNetwork->state_size(), t_air);
	const std::size_t carried = std::min(old_components, mNetwork->component_count()) * 3;
	std::copy_n(old.begin(), carried, x.begin());
	x[static_cast<std::size_t>(mNetwork->air_index())] = t_air;
	x[static_cast<std::size_t>(mNetwork->radiant_index())] = t_rad;

	if (mModel.controller.mode == ControllerMode::External) {
		if (!mController)
			throw Error(ErrorCode::InvalidParameter, "external controller mode requires a controller");
		mQHeat = mActuation.u_heat * mModel.nominal_heating_power;
		mQCool = mActuation.u_cool * mModel.nominal_cooling_power;
	} else {
		mQHeat = std::clamp(mQHeat, 0.0, mModel.nominal_heating_power);
		mQCool = mModel.controller.cooling_enabled ? std::clamp(mQCool, 0.0, mModel.nominal_cooling_power) : 0.0;
	}
}

void Simulator::set_signals(ScheduleSignals signals) { mSignals = std::move(signals); }

double Simulator::heating_setpoint(double t) const { return mModel.controller.setpoint_at(seconds_of_day(t)); }

double Simulator::window_conductance(double open, double t_air, double t_out) const
{
	return mModel.air_density * physics::kAirHeatCapacity * window_airflow(mModel.windows, open, t_air, t_out);
}

Simulator::Drive Simulator::drive_at(double t) const
{
	const auto w = mSampler.at(t);
	Drive d;
	d.forcing.t_out = w.dry_bulb;
	d.forcing.t_ground = mModel.ground_temperature;
	d.forcing.irradiance = w.surfaces;
	double transmitted = 0.0;
	for (std::size_t o = 0; o < 4; ++o)
		transmitted += mModel.windows.area[o] * w.surfaces.total[o];
	d.forcing.q_transmitted_solar = transmitted * mModel.windows.g_value * mModel.windows.transparent_fraction;
	d.forcing.q_gains = mSignals.gains ? mSignals.gains->at(t) : 0.0;
	if (mModel.controller.mode == ControllerMode::External && mActuation.window_open)
		d.window_open = *mActuation.window_open;
	else
		d.window_open = mSignals.windows ? std::clamp(mSignals.windows->at(t), 0.0, 1.0) : 0.0;
	d.direct_normal = w.direct_normal;
	d.diffuse_horizontal = w.diffuse_horizontal;
	return d;
}

void Simulator::poll_controller()
{
	if (mModel.controller.mode != ControllerMode::External)
		return;
	if (mStepIndex % mStepsPerControl != 0 || mLastCall == mStepIndex)
		return;
	const double t = time();
	const auto w = mSampler.at(t);
	Observation obs;
	obs.time = t;
	obs.t_air = mState.air_temperature();
	obs.t_out = w.dry_bulb;
	obs.direct_normal = w.direct_normal;
	obs.diffuse_horizontal = w.diffuse_horizontal;
	obs.previous = mActuation;
	mActuation = run_external_controller(*mController, obs);
	mLastCall = mStepIndex;
	++mControllerCalls;
	mQHeat = mActuation.u_heat * mModel.nominal_heating_power;
	mQCool = mActuation.u_cool * mModel.nominal_cooling_power;
}

void Simulator::step()
{
	poll_controller();
	const double dt = mSettings.integrator_step;
	const double t0 = time();
	const double t1 = t0 + dt;

	Drive d0 = drive_at(t0);
	Drive d1 = drive_at(t1);
	d1.forcing.q_gains = d0.forcing.q_gains;
	const double gw = window_conductance(d0.window_open, mState.air_temperature(), d0.forcing.t_out);

	Forcing& start = d0.forcing;
	Forcing& end = d1.forcing;
	start.q_heat = mQHeat;
	start.q_cool = mQCool;

	ImplicitControl control;
	Eigen::VectorXd x1;
	const auto& spec = mModel.controller;
	if (spec.mode == ControllerMode::External) {
		end.q_heat = mQHeat;
		end.q_cool = mQCool;
		x1 = mIntegrator->solve(mState, start, end, gw, control);
	} else {
		// The proportional law is piecewise linear in the end temperature;
		// solve for a regime guess and re-check until it is self-consistent.
		const double qh = mModel.nominal_heating_power;
		const double qc = spec.cooling_enabled ? mModel.nominal_cooling_power : 0.0;
		const double band = spec.proportional_band;
		const double sp = heating_setpoint(t1);
		const double spc = spec.cooling_setpoint;
		auto heat_regime = [&](double t) { return qh > 0.0 ? regime((sp - t) / band) : 0; };
		auto cool_regime = [&](double t) { return qc > 0.0 ? regime((t - spc) / band) : 0; };

		double t_guess = mState.air_temperature();
		int rh = heat_regime(t_guess), rc = cool_regime(t_guess);
		for (int it = 0; it < kMaxRegimeIterations; ++it) {
			control = {};
			end.q_heat = rh == 2 ? qh : 0.0;
			end.q_cool = rc == 2 ? qc : 0.0;
			if (rh == 1) {
				control.heat_gain = qh / band;
				control.heat_setpoint = sp;
			}
			if (rc == 1) {
				control.cool_gain = qc / band;
				control.cool_setpoint = spc;
			}
			x1 = mIntegrator->solve(mState, start, end, gw, control);
			t_guess = x1[mNetwork->air_index()];
			const int nh = heat_regime(t_guess), nc = cool_regime(t_guess);
			if (nh == rh && nc == rc)
				break;
			rh = nh;
			rc = nc;
		}
	}

	const auto r = mIntegrator->commit(mState, x1, start, end, gw, control);
	const double p0 = heat_pump_power(mModel.heat_pump, start.q_heat, start.t_out, heating_setpoint(t0)).electrical_power;
	const double p1 = heat_pump_power(mModel.heat_pump, r.q_heat, end.t_out, heating_setpoint(t1)).electrical_power;
	mState.energy.electrical += 0.5 * dt * (p0 + p1);
	mQHeat = r.q_heat;
	mQCool = r.q_cool;
	++mStepIndex;
}

void Simulator::advance(double until, const std::function<void(const Sample&)>& on_output)
{
	const long long target = whole_steps(until, mSettings.integrator_step, "advance target");
	while (mStepIndex < target) {
		step();
		if (on_output && mStepIndex >= 0 && mStepIndex % mStepsPerOutput == 0) {
			poll_controller();
			on_output(sample());
		}
	}
	poll_controller();
}

Sample Simulator::sample() const
{
	const double t = time();
	const Drive d = drive_at(t);
	const double t_air = mState.air_temperature();
	const double t_out = d.forcing.t_out;
	const auto hp = heat_pump_power(mModel.heat_pump, mQHeat, t_out, heating_setpoint(t));
	const double gv = mNetwork->ventilation_conductance() + window_conductance(d.window_open, t_air, t_out);

	Sample s;
	s[Column::Time] = t;
	s[Column::TAir] = t_air;
	s[Column::TOut] = t_out;
	s[Column::QHeat] = mQHeat;
	s[Column::QCool] = mQCool;
	s[Column::PElectric] = hp.electrical_power;
	s[Column::QVent] = gv * (t_air - t_out);
	s[Column::QSolTrans] = d.forcing.q_transmitted_solar;
	s[Column::UHeat] = mModel.nominal_heating_power > 0.0 ? mQHeat / mModel.nominal_heating_power : 0.0;
	s[Column::UCool] = mModel.nominal_cooling_power > 0.0 ? mQCool / mModel.nominal_cooling_power : 0.0;
	s[Column::WindowOpen] = d.window_open;
	s[Column::TSupply] = hp.t_supply;
	s[Column::Cop] = hp.cop;
	s[Column::TRadiant] = mState.radiant_temperature();
	s[Column::QGains] = d.forcing.q_gains;
	s[Column::DirectNormal] = d.direct_normal;
	s[Column::DiffuseHorizontal] = d.diffuse_horizontal;
	return s;
}

} // namespace thermsynth
