#pragma once

#include <stdexcept>
#include <string>

namespace crooked {

/// Base class for all errors raised by the crooked geometry kernel.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A vector component is NaN or infinite.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

/// A vector expected to be spacelike has non-positive self-product.
class NotSpacelikeError : public Error {
public:
    using Error::Error;
};

/// A vector expected to satisfy u.u = 1 does not.
class NotUnitSpacelikeError : public Error {
public:
    using Error::Error;
};

/// A pair of directions fails the consistent-orientation conditions.
class NotConsistentlyOrientedError : public Error {
public:
    using Error::Error;
};

/// Invalid numeric or structural parameters (mesh sizes, ranges, ...).
class InvalidParamsError : public Error {
public:
    using Error::Error;
};

/// Path endpoints do not admit the interpolated directing path.
class InvalidEndpointsError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature failed to converge within the panel cap.
class QuadratureFailureError : public Error {
public:
    using Error::Error;
};

/// The vertex-path solver could not reach the target displacement.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// A documented caller contract was violated.
class PreconditionFailedError : public Error {
public:
    using Error::Error;
};

/// Foliation requested between crooked planes that are not disjoint.
class NotDisjointError : public Error {
public:
    using Error::Error;
};

/// Directions are identical or opposite; the pair criterion does not apply.
class DegenerateCaseError : public Error {
public:
    using Error::Error;
};

/// Parameter outside its documented range.
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

/// Malformed JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed JSON that does not match the expected schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Schema-valid input with geometrically invalid content.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure while reading or writing artifacts.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace crooked
