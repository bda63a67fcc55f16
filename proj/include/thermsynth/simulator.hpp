#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>

#include "thermsynth/hvac.hpp"
#include "thermsynth/profiles.hpp"
#include "thermsynth/thermal.hpp"
#include "thermsynth/weather.hpp"

namespace thermsynth {

enum class Column {
	Time,
	TAir,
	TOut,
	QHeat,
	QCool,
	PElectric,
	QVent,
	QSolTrans,
	UHeat,
	UCool,
	WindowOpen,
	TSupply,
	Cop,
	TRadiant,
	QGains,
	DirectNormal,
	DiffuseHorizontal,
};
constexpr std::size_t kColumnCount = 17;
// The first kDefaultColumnCount columns form the default output selection.
constexpr std::size_t kDefaultColumnCount = 13;

std::string_view column_name(Column c);
std::optional<Column> parse_column(std::string_view name);

// Instantaneous outputs at one point in time.
struct Sample {
	std::array<double, kColumnCount> values{};

	double operator[](Column c) const { return values[static_cast<std::size_t>(c)]; }
	double& operator[](Column c) { return values[static_cast<std::size_t>(c)]; }
};

struct SimulationSettings {
	double integrator_step = 60.0;  // s
	double output_interval = 900.0; // s, multiple of the integrator step
	double initial_temperature = 20.0;
	double warmup = 0.0; // s simulated before t = 0; energies are reset afterwards
};

// Occupant-driven signals; a null pointer means "always zero".
struct ScheduleSignals {
	std::shared_ptr<const Profile> gains;
	std::shared_ptr<const Profile> windows;
};

// Drives one zone through time: weather, schedules and control are sampled
// per integrator step, outputs are reported on the output grid.
class Simulator {
public:
	Simulator(const ResolvedModel& model, std::shared_ptr<const WeatherSeries> weather, SimulationSettings settings,
	          ScheduleSignals signals = {}, ExternalController* controller = nullptr);

	// Replaces the physical model mid-run. Node temperatures are carried over
	// by position; accumulated energies are kept.
	void set_model(const ResolvedModel& model);
	void set_signals(ScheduleSignals signals);

	// Integrates up to `until` (a multiple of the integrator step) and calls
	// `on_output` for every output instant strictly after the current time.
	void advance(double until, const std::function<void(const Sample&)>& on_output = {});

	Sample sample() const;
	double time() const { return static_cast<double>(mStepIndex) * mSettings.integrator_step; }
	const ZoneState& state() const { return mState; }
	const ResolvedModel& model() const { return mModel; }
	const ThermalNetwork& network() const { return *mNetwork; }
	const TrapezoidalIntegrator& integrator() const { return *mIntegrator; }
	std::size_t controller_calls() const { return mControllerCalls; }

private:
	struct Drive {
		Forcing forcing;
		double window_open = 0.0;
		double direct_normal = 0.0;
		double diffuse_horizontal = 0.0;
	};

	void rebuild();
	Drive drive_at(double t) const;
	double heating_setpoint(double t) const;
	double window_conductance(double open, double t_air, double t_out) const;
	void poll_controller();
	void step();

	ResolvedModel mModel;
	std::shared_ptr<const WeatherSeries> mWeather;
	WeatherSampler mSampler;
	SimulationSettings mSettings;
	ScheduleSignals mSignals;
	ExternalController* mController;

	std::shared_ptr<const ThermalNetwork> mNetwork;
	std::unique_ptr<TrapezoidalIntegrator> mIntegrator;
	ZoneState mState;
	long long mStepIndex = 0; // current time = index * integrator step
	long long mStepsPerOutput = 1;
	long long mStepsPerControl = 1;

	double mQHeat = 0.0; // currently applied
	double mQCool = 0.0;
	Actuation mActuation;
	std::optional<long long> mLastCall; // step index of the last controller call
	std::size_t mControllerCalls = 0;
};

} // namespace thermsynth
