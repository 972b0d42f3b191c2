#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fmlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-side contract violation (bad parameter, wrong weight family, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A parameter parsed fine but lies outside its admissible range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Numerical failure: overflow, quadrature or solver non-convergence.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double achieved = 0.0)
        : Error(what), achieved_(achieved) {}

    /// Achieved tolerance / residual at the point of failure, when meaningful.
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Syntax error in a weight or symbol spec string.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& text)
        : Error(make_message(offset, expected, text)), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string make_message(std::size_t offset, const std::vector<std::string>& expected,
                                    const std::string& text) {
        std::string msg = "parse error at byte " + std::to_string(offset) + " in '" + text + "': expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += " | ";
            msg += expected[i];
        }
        return msg;
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

}  // namespace fmlab
