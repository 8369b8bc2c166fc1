#include "cclust/error.hpp"

namespace cclust {

ParseError::ParseError(const std::string& path, std::size_t line, const std::string& what) :
    DataError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

ConvergenceError::ConvergenceError(const std::string& what, double residual) :
    NumericalError(what + " (achieved residual " + std::to_string(residual) + ")"), residual_(residual) {}

}
