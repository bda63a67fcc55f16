#include "thermsynth/thermal.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "thermsynth/error.hpp"

namespace thermsynth {

namespace {

Input solar_input(SurfaceOrientation o)
{
	switch (o) {
	case SurfaceOrientation::North: return Input::SolarNorth;
	case SurfaceOrientation::East: return Input::SolarEast;
	case SurfaceOrientation::South: return Input::SolarSouth;
	case SurfaceOrientation::West: return Input::SolarWest;
	default: return Input::SolarHorizontal;
	}
}

bool receives_sun(SurfaceOrientation o)
{
	return o != SurfaceOrientation::Ground && o != SurfaceOrientation::Internal;
}

int col(Input i) { return static_cast<int>(i); }

} // namespace

std::string_view to_string(SurfaceOrientation o)
{
	switch (o) {
	case SurfaceOrientation::North: return "north";
	case SurfaceOrientation::East: return "east";
	case SurfaceOrientation::South: return "south";
	case SurfaceOrientation::West: return "west";
	case SurfaceOrientation::Horizontal: return "horizontal";
	case SurfaceOrientation::Ground: return "ground";
	case SurfaceOrientation::Internal: return "internal";
	}
	return "?";
}

ThermalNetwork assemble_network(const ResolvedModel& model)
{
	ThermalNetwork net;
	net.mComponents = model.components;
	net.mHeatingConvective = model.splits.heating_convective_fraction;
	net.mGainsConvective = model.splits.internal_gains_convective_fraction;

	const int n = static_cast<int>(model.components.size());
	for (const auto& c : model.components) {
		bool ok = std::isfinite(c.area) && c.area > 0.0;
		for (double r : c.resistances)
			ok = ok && std::isfinite(r) && r > 0.0;
		for (double cap : c.capacities)
			ok = ok && std::isfinite(cap) && cap > 0.0;
		if (!ok)
			throw Error(ErrorCode::SingularNetwork,
			            "component '" + c.name + "' needs positive area, resistances and capacities");
	}
	const double air_capacity = model.air_density * physics::kAirHeatCapacity * model.zone_volume;
	if (!(air_capacity > 0.0) || !std::isfinite(air_capacity))
		throw Error(ErrorCode::SingularNetwork, "zone air volume must be positive");

	for (int c = 0; c < n; ++c)
		for (int k = 0; k < 3; ++k)
			net.mNodes.push_back({ThermalNetwork::NodeKind::Capacity, c, model.components[c].capacities[k]});
	const int air = 3 * n;
	const int star = air + 1;
	net.mNodes.push_back({ThermalNetwork::NodeKind::Air, -1, air_capacity});
	net.mNodes.push_back({ThermalNetwork::NodeKind::Radiant, -1, 0.0});

	std::vector<int> exterior(n, -1), interior(n, -1);
	for (int c = 0; c < n; ++c) {
		if (model.components[c].orientation != SurfaceOrientation::Internal) {
			exterior[c] = static_cast<int>(net.mNodes.size());
			net.mNodes.push_back({ThermalNetwork::NodeKind::ExteriorSurface, c, 0.0});
		}
		interior[c] = static_cast<int>(net.mNodes.size());
		net.mNodes.push_back({ThermalNetwork::NodeKind::InteriorSurface, c, 0.0});
	}

	auto link = [&net](int a, int b, double g) { net.mLinks.push_back({a, b, Input::Outdoor, g}); };
	auto boundary = [&net](int a, Input which, double g) { net.mLinks.push_back({a, -1, which, g}); };

	const int node_count = static_cast<int>(net.mNodes.size());
	net.mInjection = Eigen::MatrixXd::Zero(node_count, kInputCount);
	net.mInjection(air, col(Input::AirHeat)) = 1.0;
	net.mInjection(star, col(Input::RadiantHeat)) = 1.0;

	double interior_area = 0.0;
	for (const auto& c : model.components)
		interior_area += c.area;

	for (int c = 0; c < n; ++c) {
		const auto& comp = model.components[c];
		const auto& R = comp.resistances;
		const int c1 = 3 * c, c2 = 3 * c + 1, c3 = 3 * c + 2;
		if (exterior[c] >= 0) {
			const Input amb = comp.orientation == SurfaceOrientation::Ground ? Input::Ground : Input::Outdoor;
			boundary(exterior[c], amb, physics::kExteriorFilm * comp.area);
			link(exterior[c], c1, 1.0 / R[0]);
			if (receives_sun(comp.orientation))
				net.mInjection(exterior[c], col(solar_input(comp.orientation))) = comp.solar_absorptance * comp.area;
		}
		// Internal components are adiabatic beyond C1, so R1 carries no flow.
		link(c1, c2, 1.0 / R[1]);
		link(c2, c3, 1.0 / R[2]);
		link(c3, interior[c], 1.0 / R[3]);
		link(interior[c], air, physics::kInteriorConvective * comp.area);
		link(interior[c], star, physics::kInteriorRadiative * comp.area);
		net.mInjection(interior[c], col(Input::TransmittedSolar)) = comp.area / interior_area;
	}

	const double window_ua = model.windows.u_value * model.windows.total_area();
	if (window_ua > 0.0)
		boundary(air, Input::Outdoor, window_ua);

	const auto& v = model.ventilation;
	net.mVentilationConductance = model.air_density * physics::kAirHeatCapacity * v.air_change_rate *
	                              v.zone_volume / 3600.0 * (1.0 - v.heat_recovery_rate);
	if (net.mVentilationConductance > 0.0)
		boundary(air, Input::Outdoor, net.mVentilationConductance);

	net.reduce();
	return net;
}

void ThermalNetwork::reduce()
{
	const int N = static_cast<int>(mNodes.size());
	const int D = static_cast<int>(dynamic_size());
	const int A = N - D;

	Eigen::MatrixXd K = Eigen::MatrixXd::Zero(N, N);
	Eigen::MatrixXd E = mInjection;
	for (const auto& l : mLinks) {
		K(l.a, l.a) -= l.conductance;
		if (l.b >= 0) {
			K(l.b, l.b) -= l.conductance;
			K(l.a, l.b) += l.conductance;
			K(l.b, l.a) += l.conductance;
		} else {
			E(l.a, col(l.boundary)) += l.conductance;
		}
	}
	for (int i = 0; i < N; ++i)
		if (K(i, i) >= 0.0)
			throw Error(ErrorCode::SingularNetwork, "node " + std::to_string(i) + " is disconnected");

	const Eigen::MatrixXd Kaa = K.bottomRightCorner(A, A);
	Eigen::FullPivLU<Eigen::MatrixXd> lu(Kaa);
	if (!lu.isInvertible())
		throw Error(ErrorCode::SingularNetwork, "massless nodes form a singular subsystem");

	const Eigen::MatrixXd Sad = lu.solve(K.bottomLeftCorner(A, D)); // Kaa^-1 Kad
	const Eigen::MatrixXd Saw = lu.solve(E.bottomRows(A));          // Kaa^-1 Ea

	mReducedK = K.topLeftCorner(D, D) - K.topRightCorner(D, A) * Sad;
	mReducedE = E.topRows(D) - K.topRightCorner(D, A) * Saw;

	mCapacity.resize(D);
	for (int i = 0; i < D; ++i) {
		mCapacity[i] = mNodes[i].capacity;
		if (!(mCapacity[i] > 0.0))
			throw Error(ErrorCode::SingularNetwork, "dynamic node " + std::to_string(i) + " has no capacity");
	}

	// Massless temperatures: T_a = -(Sad x + Saw w). The star is the first one.
	mStarFromX = -Sad.row(0);
	mStarFromW = -Saw.row(0);

	mLossFromX = Eigen::RowVectorXd::Zero(D);
	mLossFromW = Eigen::RowVectorXd::Zero(kInputCount);
	for (const auto& l : mLinks) {
		if (l.b >= 0)
			continue;
		if (l.a < D) {
			mLossFromX[l.a] += l.conductance;
		} else {
			mLossFromX -= l.conductance * Sad.row(l.a - D);
			mLossFromW -= l.conductance * Saw.row(l.a - D);
		}
		mLossFromW[col(l.boundary)] -= l.conductance;
	}
}

double ThermalNetwork::radiant_temperature(const Eigen::VectorXd& x, const Eigen::VectorXd& w) const
{
	return mStarFromX.dot(x) + mStarFromW.dot(w);
}

double ThermalNetwork::boundary_loss(const Eigen::VectorXd& x, const Eigen::VectorXd& w) const
{
	return mLossFromX.dot(x) + mLossFromW.dot(w);
}

ZoneState ZoneState::uniform(const ThermalNetwork& net, double temperature)
{
	ZoneState s;
	s.temperatures.assign(net.state_size(), temperature);
	return s;
}

} // namespace thermsynth
