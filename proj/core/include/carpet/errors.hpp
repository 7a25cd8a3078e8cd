#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace carpet {

// Error taxonomy shared by every module; `kind()` feeds the CLI's
// machine-readable error JSON.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
    virtual const char* kind() const noexcept { return "error"; }
};

// Caller passed a value outside an operation's precondition.
class argument_error : public error {
public:
    using error::error;
    const char* kind() const noexcept override { return "argument"; }
};

// Input is syntactically fine but the mathematics rejects it
// (obstructed tree, log of a non-positive argument, ...).
class domain_error : public error {
public:
    using error::error;
    const char* kind() const noexcept override { return "domain"; }
};

// An iteration failed to converge; carries the best iterates so callers
// can inspect how close it got.
class numerical_error : public error {
public:
    explicit numerical_error(const std::string& msg,
                             std::vector<std::complex<double>> best = {})
        : error(msg), best_iterates(std::move(best)) {}
    const char* kind() const noexcept override { return "numerical"; }
    std::vector<std::complex<double>> best_iterates;
};

// 0/0 or another indeterminate form was hit within tolerance.
class degenerate_error : public error {
public:
    using error::error;
    const char* kind() const noexcept override { return "degenerate"; }
};

// An explicit iteration/work budget was exhausted.
class budget_error : public error {
public:
    using error::error;
    const char* kind() const noexcept override { return "budget"; }
};

class io_error : public error {
public:
    using error::error;
    const char* kind() const noexcept override { return "io"; }
};

} // namespace carpet
