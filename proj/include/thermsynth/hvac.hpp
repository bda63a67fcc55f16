#pragma once

#include <memory>
#include <optional>
#include <string>

#include "thermsynth/model.hpp"

namespace thermsynth {

// Single-sided buoyancy-driven airflow through an opened window, m3/s.
double window_airflow(const WindowGroup& window, double open_fraction, double t_in, double t_out);

struct HeatPumpOperation {
	double electrical_power = 0.0; // W
	double cop = 0.0;
	double t_supply = 0.0; // degC
};

// Carnot-quality surrogate driven by a linear heating curve.
HeatPumpOperation heat_pump_power(const HeatPumpSpec& spec, double q_heat, double t_out, double room_setpoint);

// Proportional controller with night setback; returns u_heat in [0, 1].
double internal_controller(const ControllerSpec& spec, double t_air, double seconds_of_day);

struct Actuation {
	double u_heat = 0.0;
	double u_cool = 0.0;
	std::optional<double> window_open; // unset: the window profile decides
};

struct Observation {
	double time = 0.0;
	double t_air = 0.0;
	double t_out = 0.0;
	double direct_normal = 0.0;
	double diffuse_horizontal = 0.0;
	Actuation previous;
};

// User-supplied control logic, called only at multiples of the control
// interval; its output is held until the next call.
class ExternalController {
public:
	virtual ~ExternalController() = default;
	virtual Actuation act(const Observation& observation) = 0;
};

// Invokes the controller, clamps its output to [0, 1] and turns any
// exception it raises into a ControllerFault.
Actuation run_external_controller(ExternalController& controller, const Observation& observation);

class ConstantController final : public ExternalController {
public:
	explicit ConstantController(Actuation value = {}) : mValue(value) {}
	Actuation act(const Observation&) override { return mValue; }

private:
	Actuation mValue;
};

// Two-point heating control with hysteresis and optional night setback.
class TwoPointController final : public ExternalController {
public:
	TwoPointController(double day_setpoint, double night_setpoint, double hysteresis, double day_start_hour = 6.0,
	                   double day_end_hour = 22.0);
	Actuation act(const Observation& observation) override;

private:
	ControllerSpec mSchedule;
	double mHysteresis;
};

} // namespace thermsynth
