#pragma once

#include <stdexcept>
#include <string>

namespace fracheat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidOrder : Error { using Error::Error; };
struct UnsupportedDim : Error { using Error::Error; };
struct NonpositiveTime : Error { using Error::Error; };
struct WrongOrder : Error { using Error::Error; };
struct BadTimeOrder : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct BadAlpha : Error { using Error::Error; };
struct OutsideBall : Error { using Error::Error; };
struct CoincidentPoints : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct BadExponent : Error { using Error::Error; };
struct BadBracket : Error { using Error::Error; };
struct NotConverged : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct InternalInconsistency : Error { using Error::Error; };
struct CalibrationError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace fracheat
