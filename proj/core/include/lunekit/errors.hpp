#pragma once

#include <stdexcept>
#include <string>

namespace lunekit {

// Violated geometric precondition: improper body, empty interior, degenerate
// input, unbounded shape. Distinct from std::invalid_argument, which is
// reserved for plain API misuse (dimension mismatch, out-of-range parameter).
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed serialized input: bad JSON shape, missing field, wrong kind tag.
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lunekit
