#pragma once

#include <stdexcept>
#include <string>

namespace rlm {

/// Operands of a binary operation live over different base fields.
class FieldMismatch : public std::invalid_argument {
public:
    explicit FieldMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A π-adic computation could not be decided at the working precision.
class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed external input (JSON chart points, CLI parameters).
class SchemaError : public std::invalid_argument {
public:
    explicit SchemaError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace rlm
