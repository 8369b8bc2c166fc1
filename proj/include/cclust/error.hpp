#ifndef CCLUST_ERROR_HPP
#define CCLUST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cclust {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;

    /// Process exit status the CLI maps this error to.
    virtual int exit_code() const noexcept { return 2; }
};

/// Invalid parameters or configuration (CLI exit status 1).
class ConfigError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 1; }
};

/// Malformed or unusable input data (CLI exit status 2).
class DataError : public Error {
public:
    using Error::Error;
};

/// Parse failure in a delimited text file, carrying the 1-based line number.
class ParseError : public DataError {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& what);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Numerical failure: non-convergence, degenerate graphs (CLI exit status 3).
class NumericalError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

/// Eigensolver failed to reach its residual target.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double residual);

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}

#endif
