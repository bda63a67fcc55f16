#include "thermsynth/error.hpp"

namespace thermsynth {

std::string_view to_string(ErrorCode code)
{
	switch (code) {
	case ErrorCode::MalformedHeader: return "MalformedHeader";
	case ErrorCode::MalformedRecord: return "MalformedRecord";
	case ErrorCode::NonHourlyData: return "NonHourlyData";
	case ErrorCode::AllMissingColumn: return "AllMissingColumn";
	case ErrorCode::SingularNetwork: return "SingularNetwork";
	case ErrorCode::NonFiniteState: return "NonFiniteState";
	case ErrorCode::ControllerFault: return "ControllerFault";
	case ErrorCode::UnresolvableLink: return "UnresolvableLink";
	case ErrorCode::UnknownProfileName: return "UnknownProfileName";
	case ErrorCode::InvalidGeometry: return "InvalidGeometry";
	case ErrorCode::BadDistribution: return "BadDistribution";
	case ErrorCode::InvalidParameter: return "InvalidParameter";
	case ErrorCode::UnknownArchetype: return "UnknownArchetype";
	case ErrorCode::NonUniformStep: return "NonUniformStep";
	case ErrorCode::OutOfRangeValue: return "OutOfRangeValue";
	case ErrorCode::MalformedRow: return "MalformedRow";
	case ErrorCode::ZipLengthMismatch: return "ZipLengthMismatch";
	case ErrorCode::EmptyVariationSet: return "EmptyVariationSet";
	case ErrorCode::ConfigError: return "ConfigError";
	case ErrorCode::IoError: return "IoError";
	}
	return "Unknown";
}

} // namespace thermsynth
