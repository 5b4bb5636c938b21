#pragma once

#include <stdexcept>
#include <string>

namespace dqa {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input / document errors
struct FileNotFoundError : Error { using Error::Error; };
struct MalformedDocumentError : Error { using Error::Error; };
struct SchemaViolationError : Error { using Error::Error; };
struct UnknownBuiltinError : Error { using Error::Error; };
struct FixtureCorruptionError : Error { using Error::Error; };

// Model / computation errors
struct CycleDetectedError : Error { using Error::Error; };
struct EmptyModelError : Error { using Error::Error; };
struct EmptyInputError : Error { using Error::Error; };
struct MissingTermError : Error { using Error::Error; };

// Statistics errors
struct LengthMismatchError : Error { using Error::Error; };
struct ZeroVarianceError : Error { using Error::Error; };
struct OutOfTableRangeError : Error { using Error::Error; };
struct RankDeficientError : Error { using Error::Error; };
struct TooFewRowsError : Error { using Error::Error; };
struct TooFewPointsError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };

}  // namespace dqa
