#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bgg {

// Exit-code taxonomy shared by the library and the CLI:
//   0 success, 2 input/parse error, 3 unsupported parameter or infeasible
//   request, 4 numerical failure.
enum class ExitCode : int {
    ok = 0,
    input = 2,
    unsupported = 3,
    numerical = 4,
};

class Error : public std::runtime_error {
public:
    Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ExitCode code() const { return code_; }

private:
    ExitCode code_;
};

// Malformed input text. line/col are 1-based; 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t col = 0)
        : Error(ExitCode::input, what), line_(line), col_(col) {}
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_, col_;
};

// Structurally well-formed input violating a model invariant (sink vertex, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ExitCode::input, what) {}
};

// Caller broke a documented precondition.
class ContractError : public Error {
public:
    explicit ContractError(const std::string& what) : Error(ExitCode::input, what) {}
};

// Parameter combination the toolkit deliberately does not support.
class UnsupportedError : public Error {
public:
    explicit UnsupportedError(const std::string& what) : Error(ExitCode::unsupported, what) {}
};

// Request is well-formed but cannot be satisfied (e.g. budget below target ratio).
class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& what) : Error(ExitCode::unsupported, what) {}
};

// Iterative solver ran out of budget; carries the last residual.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(ExitCode::numerical, what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// Singular systems, underflow, failed post-checks.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ExitCode::numerical, what) {}
};

// A guard that should be unreachable fired.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(ExitCode::numerical, what) {}
};

} // namespace bgg
