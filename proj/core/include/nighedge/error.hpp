#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nighedge {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Non-finite or otherwise malformed numeric input.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A documented precondition (e.g. parameter validation) does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Requested strike lies outside a computed log-strike grid.
class RangeError : public Error {
public:
    using Error::Error;
};

// The Fourier integration interval N*eta is shorter than the certified
// minimum for the requested (tau, strike, spot).
class IntervalTooShort : public Error {
public:
    IntervalTooShort(double w_min, double upper_limit, double tau, double strike)
        : Error("integration interval too short: N*eta=" + std::to_string(upper_limit) +
                " <= w_min=" + std::to_string(w_min) + " (tau=" + std::to_string(tau) +
                ", K=" + std::to_string(strike) + ")"),
          w_min_(w_min), upper_limit_(upper_limit), tau_(tau), strike_(strike) {}

    double w_min() const noexcept { return w_min_; }
    double upper_limit() const noexcept { return upper_limit_; }
    double tau() const noexcept { return tau_; }
    double strike() const noexcept { return strike_; }

private:
    double w_min_;
    double upper_limit_;
    double tau_;
    double strike_;
};

// CSV or config text that cannot be parsed. `line` is 1-based, 0 if unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace nighedge
