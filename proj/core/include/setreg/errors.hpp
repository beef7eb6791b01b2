#pragma once
#include <stdexcept>
#include <string>

namespace setreg {

struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

struct PointNotInSet : std::invalid_argument {
    explicit PointNotInSet(const std::string& what) : std::invalid_argument(what) {}
};

struct PointNotInIntersection : std::invalid_argument {
    explicit PointNotInIntersection(const std::string& what) : std::invalid_argument(what) {}
};

// Raised for a union point lying in two or more pieces: the Frechet cone
// there may be strictly smaller than any piece's cone.
struct NonRegularPoint : std::invalid_argument {
    explicit NonRegularPoint(const std::string& what) : std::invalid_argument(what) {}
};

struct TrivialCone : std::invalid_argument {
    explicit TrivialCone(const std::string& what) : std::invalid_argument(what) {}
};

struct AmbientDimensionTooLarge : std::invalid_argument {
    explicit AmbientDimensionTooLarge(const std::string& what) : std::invalid_argument(what) {}
};

struct InsufficientData : std::runtime_error {
    explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

struct MethodArityError : std::invalid_argument {
    explicit MethodArityError(const std::string& what) : std::invalid_argument(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace setreg
