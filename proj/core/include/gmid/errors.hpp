#pragma once

#include <stdexcept>
#include <string>

namespace gmid {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A lookup fell outside the characterized grid.
class RangeError : public Error {
public:
    RangeError(std::string axis, double value, double lo, double hi);

    const std::string& axis() const noexcept { return axis_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    std::string axis_;
    double lo_;
    double hi_;
};

/// A design target cannot be met.
class Infeasible : public Error {
public:
    using Error::Error;
};

/// Requested gm/id is outside what the device reaches at the given length.
class InfeasibleTarget : public Infeasible {
public:
    InfeasibleTarget(double target, double lo, double hi, double l);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

/// No characterized length reaches the required intrinsic gain.
class InfeasibleGain : public Infeasible {
public:
    InfeasibleGain(double required, double best_gm_gds, double best_l);

    double best_gm_gds() const noexcept { return best_gm_gds_; }
    double best_l() const noexcept { return best_l_; }

private:
    double best_gm_gds_;
    double best_l_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Raised by the sizing procedure; names the stage that could not be met.
class SynthesisError : public Error {
public:
    SynthesisError(std::string stage, const std::string& cause);

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

} // namespace gmid
