#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "thermsynth/model.hpp"
#include "thermsynth/weather.hpp"

namespace thermsynth {

// Columns of the network input matrix.
enum class Input : int {
	Outdoor = 0,      // degC
	Ground,           // degC
	AirHeat,          // W injected at the air node
	RadiantHeat,      // W injected at the radiant star node
	TransmittedSolar, // W spread area-weighted over interior surfaces
	SolarNorth,       // W/m2 incident on exterior surfaces, by orientation
	SolarEast,
	SolarSouth,
	SolarWest,
	SolarHorizontal,
};
constexpr int kInputCount = 10;

// Linear single-zone RC network. Temperature states are the three capacity
// nodes of every component, the air node and the radiant star node, in that
// order. Surface nodes are massless; they and the star node are eliminated
// algebraically, so the integrated system has 3n + 1 states.
class ThermalNetwork {
public:
	enum class NodeKind { Capacity, Air, Radiant, ExteriorSurface, InteriorSurface };

	struct Node {
		NodeKind kind;
		int component; // -1 for air / star
		double capacity; // J/K, 0 for massless nodes
	};

	struct Link {
		int a;
		int b; // -1: boundary link to `boundary`
		Input boundary;
		double conductance; // W/K
	};

	const std::vector<RCComponent>& components() const { return mComponents; }
	const std::vector<Node>& nodes() const { return mNodes; }
	const std::vector<Link>& links() const { return mLinks; }

	// Full-node input map (nodes x kInputCount); boundary temperatures enter
	// through links, not through this matrix.
	const Eigen::MatrixXd& injection() const { return mInjection; }

	std::size_t component_count() const { return mComponents.size(); }
	std::size_t state_size() const { return 3 * mComponents.size() + 2; }
	std::size_t dynamic_size() const { return 3 * mComponents.size() + 1; }
	int air_index() const { return static_cast<int>(3 * mComponents.size()); }
	int radiant_index() const { return air_index() + 1; }

	double heating_convective_fraction() const { return mHeatingConvective; }
	double gains_convective_fraction() const { return mGainsConvective; }

	// Reduced dynamics C dx/dt = K x + E w over the dynamic nodes.
	const Eigen::VectorXd& capacities() const { return mCapacity; }
	const Eigen::MatrixXd& reduced_conductance() const { return mReducedK; }
	const Eigen::MatrixXd& reduced_input() const { return mReducedE; }

	// Algebraic recoveries, linear in (x, w).
	double radiant_temperature(const Eigen::VectorXd& x, const Eigen::VectorXd& w) const;
	// Heat flowing out through all boundary links (envelope, windows,
	// mechanical ventilation), W.
	double boundary_loss(const Eigen::VectorXd& x, const Eigen::VectorXd& w) const;
	double ventilation_conductance() const { return mVentilationConductance; }
	double air_capacity() const { return mCapacity[air_index()]; }

	friend ThermalNetwork assemble_network(const ResolvedModel& model);

private:
	ThermalNetwork() = default;
	void reduce();

	std::vector<RCComponent> mComponents;
	std::vector<Node> mNodes;
	std::vector<Link> mLinks;
	Eigen::MatrixXd mInjection;
	double mHeatingConvective = 1.0;
	double mGainsConvective = 1.0;
	double mVentilationConductance = 0.0;

	Eigen::VectorXd mCapacity;
	Eigen::MatrixXd mReducedK;
	Eigen::MatrixXd mReducedE;
	Eigen::RowVectorXd mStarFromX, mStarFromW;
	Eigen::RowVectorXd mLossFromX, mLossFromW;
};

ThermalNetwork assemble_network(const ResolvedModel& model);

struct EnergyTotals {
	double heating = 0.0;       // J delivered by the thermal source
	double cooling = 0.0;       // J removed by the thermal sink
	double electrical = 0.0;    // J drawn by the heat pump
	double internal_gains = 0.0;
	double solar = 0.0;         // absorbed opaque + transmitted
	double losses = 0.0;        // envelope + ventilation, net outward
	double ventilation = 0.0;   // part of `losses` carried by air exchange
};

struct ZoneState {
	std::vector<double> temperatures; // 3n component nodes, air, radiant
	EnergyTotals energy;

	double air_temperature() const { return temperatures[temperatures.size() - 2]; }
	double radiant_temperature() const { return temperatures.back(); }

	static ZoneState uniform(const ThermalNetwork& net, double temperature);
};

// Boundary conditions and source terms at one instant.
struct Forcing {
	double t_out = 0.0;
	double t_ground = 10.0;
	SurfaceIrradiance irradiance;
	double q_transmitted_solar = 0.0; // W
	double q_gains = 0.0;             // W, split by the gains fraction
	double q_heat = 0.0;              // W, split by the heating fraction
	double q_cool = 0.0;              // W removed, same split as heating
};

// Proportional control solved implicitly at the end of a step:
// q_heat = heat_gain * (heat_setpoint - T_air), q_cool = cool_gain * (T_air - cool_setpoint).
struct ImplicitControl {
	double heat_gain = 0.0;
	double heat_setpoint = 0.0;
	double cool_gain = 0.0;
	double cool_setpoint = 0.0;
};

// Implicit trapezoidal rule with a fixed step. Window airflow enters as an
// extra air-to-outdoor conductance held over the step; it and the implicit
// controller are both rank-one updates on the air column, handled by
// Sherman-Morrison against a single factorisation.
class TrapezoidalIntegrator {
public:
	TrapezoidalIntegrator(std::shared_ptr<const ThermalNetwork> network, double dt);

	struct StepResult {
		double q_heat = 0.0; // end-of-step values actually applied
		double q_cool = 0.0;
	};

	// End-of-step dynamic state without touching `state`.
	Eigen::VectorXd solve(const ZoneState& state, const Forcing& start, const Forcing& end,
	                      double window_conductance, const ImplicitControl& control) const;

	StepResult commit(ZoneState& state, const Eigen::VectorXd& x1, const Forcing& start, const Forcing& end,
	                  double window_conductance, const ImplicitControl& control) const;

	StepResult step(ZoneState& state, const Forcing& start, const Forcing& end, double window_conductance = 0.0,
	                const ImplicitControl& control = {}) const;

	double dt() const { return mDt; }
	const ThermalNetwork& network() const { return *mNetwork; }
	Eigen::VectorXd inputs(const Forcing& f) const;
	double stored_energy(const ZoneState& state) const;

private:
	std::shared_ptr<const ThermalNetwork> mNetwork;
	double mDt;
	Eigen::MatrixXd mIncrement; // M^-1 K
	Eigen::MatrixXd mInputGain;  // M^-1 E
	Eigen::VectorXd mAirResponse;  // M^-1 e_air
	Eigen::VectorXd mHeatResponse; // M^-1 b_heat
};

} // namespace thermsynth
