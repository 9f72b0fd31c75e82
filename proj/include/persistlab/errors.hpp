#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace persistlab {

/// Base class for domain errors (bad inputs that are well-formed but
/// violate a mathematical precondition). The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (CSV/JSON). The CLI maps these to exit code 2.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MonotonicityViolation : public Error {
public:
    MonotonicityViolation(std::size_t face, std::size_t coface, std::size_t component)
        : Error("monotonicity violated: simplex " + std::to_string(face) + " is a face of simplex " +
                std::to_string(coface) + " but has a larger value in component " +
                std::to_string(component)),
          face_(face), coface_(coface), component_(component) {}

    std::size_t face() const noexcept { return face_; }
    std::size_t coface() const noexcept { return coface_; }
    /// 1-based index of the violated coordinate.
    std::size_t component() const noexcept { return component_; }

private:
    std::size_t face_;
    std::size_t coface_;
    std::size_t component_;
};

/// Raised where a derivative is requested on a lower-dimensional stratum
/// (a zero pairwise distance or two equal distances).
class StratumBoundary : public Error {
public:
    using Error::Error;
};

class ResolutionTooLong : public Error {
public:
    using Error::Error;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

class MalformedBlock : public Error {
public:
    using Error::Error;
};

class NonFiniteValue : public Error {
public:
    using Error::Error;
};

}  // namespace persistlab
