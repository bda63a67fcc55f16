#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thermsynth {

enum class ErrorCode {
	// weather
	MalformedHeader,
	MalformedRecord,
	NonHourlyData,
	AllMissingColumn,
	// thermal core
	SingularNetwork,
	NonFiniteState,
	ControllerFault,
	// converter
	UnresolvableLink,
	UnknownProfileName,
	InvalidGeometry,
	BadDistribution,
	InvalidParameter,
	// profiles
	UnknownArchetype,
	NonUniformStep,
	OutOfRangeValue,
	MalformedRow,
	// orchestrator
	ZipLengthMismatch,
	EmptyVariationSet,
	ConfigError,
	IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure the library reports on purpose is an Error carrying a code;
// anything else escaping a public function is a bug.
class Error : public std::runtime_error {
public:
	Error(ErrorCode code, const std::string& message)
		: std::runtime_error(std::string(to_string(code)) + ": " + message), mCode(code)
	{
	}

	ErrorCode code() const noexcept { return mCode; }

private:
	ErrorCode mCode;
};

} // namespace thermsynth
