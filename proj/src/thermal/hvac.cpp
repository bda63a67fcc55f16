#include "thermsynth/hvac.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "thermsynth/error.hpp"

namespace thermsynth {

namespace {
constexpr double kDischargeCoefficient = 0.7;
constexpr double kMaxSupplyTemperature = 70.0;
} // namespace

double ControllerSpec::setpoint_at(double seconds_of_day) const
{
	const double hour = seconds_of_day / 3600.0;
	const bool day = day_start_hour <= day_end_hour ? (hour >= day_start_hour && hour < day_end_hour)
	                                                : (hour >= day_start_hour || hour < day_end_hour);
	return day ? day_setpoint : night_setpoint;
}

double window_airflow(const WindowGroup& window, double open_fraction, double t_in, double t_out)
{
	open_fraction = std::clamp(open_fraction, 0.0, 1.0);
	const double dT = std::abs(t_in - t_out);
	if (open_fraction == 0.0 || dT == 0.0 || window.opening_area <= 0.0)
		return 0.0;
	const double t_mean = 0.5 * (t_in + t_out) + physics::kKelvin;
	return open_fraction * (kDischargeCoefficient / 3.0) * window.opening_area *
	       std::sqrt(physics::kGravity * window.opening_height * dT / t_mean);
}

HeatPumpOperation heat_pump_power(const HeatPumpSpec& spec, double q_heat, double t_out, double room_setpoint)
{
	HeatPumpOperation op;
	op.t_supply = room_setpoint + spec.heating_curve_steepness * (room_setpoint - t_out);
	op.t_supply = std::clamp(op.t_supply, room_setpoint, std::max(room_setpoint, kMaxSupplyTemperature));
	const double lift = std::max(op.t_supply - t_out, 1.0);
	const double carnot = (op.t_supply + physics::kKelvin) / lift;
	op.cop = std::clamp(spec.carnot_quality * spec.relative_efficiency * carnot, spec.cop_min, spec.cop_max);
	op.electrical_power = q_heat > 0.0 ? q_heat / op.cop : 0.0;
	return op;
}

double internal_controller(const ControllerSpec& spec, double t_air, double seconds_of_day)
{
	const double setpoint = spec.setpoint_at(seconds_of_day);
	return std::clamp((setpoint - t_air) / spec.proportional_band, 0.0, 1.0);
}

Actuation run_external_controller(ExternalController& controller, const Observation& observation)
{
	Actuation a;
	try {
		a = controller.act(observation);
	} catch (const std::exception& e) {
		throw Error(ErrorCode::ControllerFault, e.what());
	} catch (...) {
		throw Error(ErrorCode::ControllerFault, "external controller raised a non-standard exception");
	}
	auto unit = [](double v) { return std::isfinite(v) ? std::clamp(v, 0.0, 1.0) : 0.0; };
	a.u_heat = unit(a.u_heat);
	a.u_cool = unit(a.u_cool);
	if (a.window_open)
		a.window_open = unit(*a.window_open);
	return a;
}

TwoPointController::TwoPointController(double day_setpoint, double night_setpoint, double hysteresis,
                                       double day_start_hour, double day_end_hour)
	: mHysteresis(hysteresis)
{
	mSchedule.day_setpoint = day_setpoint;
	mSchedule.night_setpoint = night_setpoint;
	mSchedule.day_start_hour = day_start_hour;
	mSchedule.day_end_hour = day_end_hour;
}

Actuation TwoPointController::act(const Observation& obs)
{
	const double setpoint = mSchedule.setpoint_at(std::fmod(obs.time, 86400.0));
	Actuation a = obs.previous;
	if (obs.t_air < setpoint - mHysteresis)
		a.u_heat = 1.0;
	else if (obs.t_air > setpoint + mHysteresis)
		a.u_heat = 0.0;
	a.u_cool = 0.0;
	return a;
}

} // namespace thermsynth
