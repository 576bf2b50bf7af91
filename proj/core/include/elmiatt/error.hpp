#pragma once

#include <stdexcept>
#include <string>

namespace elmiatt {

enum class ErrorCode {
    DimensionMismatch,
    TooFewTargets,
    OutOfRange,
    BadWeights,
    SpecMismatch,
    BadGroup,
    EmptyDataset,
    MissingAtt,
    AttNotConfident,
    NotADistribution,
    DomainViolation,
    ConfigError,
    IoError,
    SchemaError,
};

const char* to_string(ErrorCode code);

// Single exception type for all domain, config and I/O failures. The CLI
// maps codes onto exit statuses (config -> 2, schema/io -> 3, domain -> 4).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace elmiatt
