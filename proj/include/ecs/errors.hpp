#pragma once

#include <stdexcept>
#include <string>

namespace ecs {

// Base for all library errors; subtypes name the violated contract.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NotFinite : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotDensityMatrix : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };

struct NullState : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct SingularEncoding : Error { using Error::Error; };

struct NegativeTime : Error { using Error::Error; };
struct NonPositive : Error { using Error::Error; };

struct TruncationInsufficient : Error { using Error::Error; };
struct ProjectionDefect : Error { using Error::Error; };

struct InvalidGrid : Error { using Error::Error; };

}  // namespace ecs
