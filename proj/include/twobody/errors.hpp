#pragma once

#include <stdexcept>
#include <string>

namespace twobody {

/// Raised when an argument lies on (or within tolerance of) a pole.
/// `location()` is the pole nearest to the requested argument.
class PoleError : public std::domain_error {
public:
    PoleError(const std::string& what, double location)
        : std::domain_error(what), location_(location) {}

    double location() const noexcept { return location_; }

private:
    double location_;
};

/// An iterative procedure stopped before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

/// A root that was asked for does not exist in the searched region.
class NoRootError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace twobody
