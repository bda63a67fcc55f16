#include <cmath>

#include "thermsynth/error.hpp"
#include "thermsynth/thermal.hpp"

namespace thermsynth {

namespace {

double solar_power(const ThermalNetwork& net, const Forcing& f)
{
	double p = f.q_transmitted_solar;
	for (const auto& c : net.components()) {
		switch (c.orientation) {
		case SurfaceOrientation::North: p += c.solar_absorptance * c.area * f.irradiance[Orientation::North]; break;
		case SurfaceOrientation::East: p += c.solar_absorptance * c.area * f.irradiance[Orientation::East]; break;
		case SurfaceOrientation::South: p += c.solar_absorptance * c.area * f.irradiance[Orientation::South]; break;
		case SurfaceOrientation::West: p += c.solar_absorptance * c.area * f.irradiance[Orientation::West]; break;
		case SurfaceOrientation::Horizontal:
			p += c.solar_absorptance * c.area * f.irradiance[Orientation::Horizontal];
			break;
		default: break;
		}
	}
	return p;
}

} // namespace

TrapezoidalIntegrator::TrapezoidalIntegrator(std::shared_ptr<const ThermalNetwork> network, double dt)
	: mNetwork(std::move(network)), mDt(dt)
{
	if (!(dt > 0.0) || !std::isfinite(dt))
		throw Error(ErrorCode::InvalidParameter, "integrator step must be positive");
	const auto& net = *mNetwork;
	const Eigen::MatrixXd C = net.capacities().asDiagonal();
	const Eigen::MatrixXd K = net.reduced_conductance();
	const Eigen::MatrixXd M = C / dt - 0.5 * K;
	const Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);

	mIncrement = lu.solve(K);
	mInputGain = lu.solve(net.reduced_input());

	Eigen::VectorXd e_air = Eigen::VectorXd::Zero(net.dynamic_size());
	e_air[net.air_index()] = 1.0;
	mAirResponse = lu.solve(e_air);

	const double conv = net.heating_convective_fraction();
	const Eigen::VectorXd b_heat = conv * net.reduced_input().col(static_cast<int>(Input::AirHeat)) +
	                               (1.0 - conv) * net.reduced_input().col(static_cast<int>(Input::RadiantHeat));
	mHeatResponse = lu.solve(b_heat);
}

Eigen::VectorXd TrapezoidalIntegrator::inputs(const Forcing& f) const
{
	const auto& net = *mNetwork;
	const double gc = net.gains_convective_fraction();
	const double hc = net.heating_convective_fraction();
	const double q_hvac = f.q_heat - f.q_cool;

	Eigen::VectorXd w(kInputCount);
	w[static_cast<int>(Input::Outdoor)] = f.t_out;
	w[static_cast<int>(Input::Ground)] = f.t_ground;
	w[static_cast<int>(Input::AirHeat)] = gc * f.q_gains + hc * q_hvac;
	w[static_cast<int>(Input::RadiantHeat)] = (1.0 - gc) * f.q_gains + (1.0 - hc) * q_hvac;
	w[static_cast<int>(Input::TransmittedSolar)] = f.q_transmitted_solar;
	w[static_cast<int>(Input::SolarNorth)] = f.irradiance[Orientation::North];
	w[static_cast<int>(Input::SolarEast)] = f.irradiance[Orientation::East];
	w[static_cast<int>(Input::SolarSouth)] = f.irradiance[Orientation::South];
	w[static_cast<int>(Input::SolarWest)] = f.irradiance[Orientation::West];
	w[static_cast<int>(Input::SolarHorizontal)] = f.irradiance[Orientation::Horizontal];
	return w;
}

double TrapezoidalIntegrator::stored_energy(const ZoneState& state) const
{
	const auto m = static_cast<Eigen::Index>(mNetwork->dynamic_size());
	const Eigen::Map<const Eigen::VectorXd> x(state.temperatures.data(), m);
	return mNetwork->capacities().dot(x);
}

Eigen::VectorXd TrapezoidalIntegrator::solve(const ZoneState& state, const Forcing& start, const Forcing& end,
                                             double window_conductance, const ImplicitControl& control) const
{
	const auto& net = *mNetwork;
	const auto m = static_cast<Eigen::Index>(net.dynamic_size());
	const int air = net.air_index();
	const Eigen::Map<const Eigen::VectorXd> x0(state.temperatures.data(), m);

	Forcing explicit_end = end;
	if (control.heat_gain > 0.0)
		explicit_end.q_heat = 0.0;
	if (control.cool_gain > 0.0)
		explicit_end.q_cool = 0.0;

	const double gw = window_conductance;
	const double g_ctrl = control.heat_gain + control.cool_gain;
	const double ctrl_drive = control.heat_gain * control.heat_setpoint + control.cool_gain * control.cool_setpoint;

	// Increment form keeps an exact equilibrium exactly stationary.
	Eigen::VectorXd d = mIncrement * x0 + mInputGain * (0.5 * (inputs(start) + inputs(explicit_end)));
	d += (0.5 * gw * (start.t_out + end.t_out - 2.0 * x0[air])) * mAirResponse;
	d += (0.5 * (ctrl_drive - g_ctrl * x0[air])) * mHeatResponse;

	if (gw != 0.0 || g_ctrl != 0.0) {
		const Eigen::VectorXd z = 0.5 * gw * mAirResponse + 0.5 * g_ctrl * mHeatResponse;
		d -= z * (d[air] / (1.0 + z[air]));
	}
	return x0 + d;
}

TrapezoidalIntegrator::StepResult TrapezoidalIntegrator::commit(ZoneState& state, const Eigen::VectorXd& x1,
                                                                const Forcing& start, const Forcing& end,
                                                                double window_conductance,
                                                                const ImplicitControl& control) const
{
	const auto& net = *mNetwork;
	const auto m = static_cast<Eigen::Index>(net.dynamic_size());
	const int air = net.air_index();

	for (Eigen::Index i = 0; i < m; ++i)
		if (!std::isfinite(x1[i]))
			throw Error(ErrorCode::NonFiniteState, "temperature state diverged");

	StepResult r;
	const double t_air1 = x1[air];
	r.q_heat = control.heat_gain > 0.0 ? control.heat_gain * (control.heat_setpoint - t_air1) : end.q_heat;
	r.q_cool = control.cool_gain > 0.0 ? control.cool_gain * (t_air1 - control.cool_setpoint) : end.q_cool;

	Forcing applied_end = end;
	applied_end.q_heat = r.q_heat;
	applied_end.q_cool = r.q_cool;

	Eigen::Map<Eigen::VectorXd> x(state.temperatures.data(), m);
	const Eigen::VectorXd w0 = inputs(start);
	const Eigen::VectorXd w1 = inputs(applied_end);
	const double gw = window_conductance;
	const double gv = net.ventilation_conductance();
	const double half_dt = 0.5 * mDt;

	const double loss0 = net.boundary_loss(x, w0) + gw * (x[air] - start.t_out);
	const double loss1 = net.boundary_loss(x1, w1) + gw * (t_air1 - end.t_out);
	const double vent0 = (gv + gw) * (x[air] - start.t_out);
	const double vent1 = (gv + gw) * (t_air1 - end.t_out);

	auto& e = state.energy;
	e.heating += half_dt * (start.q_heat + r.q_heat);
	e.cooling += half_dt * (start.q_cool + r.q_cool);
	e.internal_gains += half_dt * (start.q_gains + end.q_gains);
	e.solar += half_dt * (solar_power(net, start) + solar_power(net, end));
	e.losses += half_dt * (loss0 + loss1);
	e.ventilation += half_dt * (vent0 + vent1);

	x = x1;
	state.temperatures[net.radiant_index()] = net.radiant_temperature(x1, w1);
	return r;
}

TrapezoidalIntegrator::StepResult TrapezoidalIntegrator::step(ZoneState& state, const Forcing& start,
                                                              const Forcing& end, double window_conductance,
                                                              const ImplicitControl& control) const
{
	const Eigen::VectorXd x1 = solve(state, start, end, window_conductance, control);
	return commit(state, x1, start, end, window_conductance, control);
}

} // namespace thermsynth
