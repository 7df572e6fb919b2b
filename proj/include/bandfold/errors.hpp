#pragma once

#include <stdexcept>
#include <string>

namespace bandfold {

// Base class for all domain errors thrown by the library.
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInput : GeometryError {
    using GeometryError::GeometryError;
};
struct DegenerateTriangle : GeometryError {
    using GeometryError::GeometryError;
};
struct DegenerateSegment : GeometryError {
    using GeometryError::GeometryError;
};
struct DegenerateVector : GeometryError {
    using GeometryError::GeometryError;
};
struct DegenerateHeight : GeometryError {
    using GeometryError::GeometryError;
};
struct IndexOutOfRange : GeometryError {
    using GeometryError::GeometryError;
};
struct DomainError : GeometryError {
    using GeometryError::GeometryError;
};
struct ConvexityViolation : GeometryError {
    using GeometryError::GeometryError;
};
struct NestingViolation : GeometryError {
    using GeometryError::GeometryError;
};
struct InvalidCutEdge : GeometryError {
    using GeometryError::GeometryError;
};
struct UnverifiedWitness : GeometryError {
    using GeometryError::GeometryError;
};
struct InvalidOpening : GeometryError {
    using GeometryError::GeometryError;
};
struct HypothesisViolation : GeometryError {
    using GeometryError::GeometryError;
};
struct InvalidParameter : GeometryError {
    using GeometryError::GeometryError;
};
struct PlacementFailure : GeometryError {
    using GeometryError::GeometryError;
};
struct PreconditionViolation : GeometryError {
    using GeometryError::GeometryError;
};
struct ParseError : GeometryError {
    using GeometryError::GeometryError;
};

}  // namespace bandfold
