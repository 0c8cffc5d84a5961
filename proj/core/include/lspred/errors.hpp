#pragma once

#include <stdexcept>
#include <string>

namespace lspred {

/// Base error. Carries the name of the module that raised it so the CLI can
/// report provenance.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& what)
        : std::runtime_error("[" + module + "] " + what), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

/// Malformed input data (link files, prediction files).
class ParseError : public Error {
public:
    ParseError(std::string module, const std::string& what, std::size_t line = 0)
        : Error(std::move(module), line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Invalid configuration or contract violation by the caller.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Failure while running the prediction pipeline.
class PipelineError : public Error {
public:
    using Error::Error;
};

/// Proportional allocation requested over an index that sums to zero.
class DegenerateIndexError : public PipelineError {
public:
    explicit DegenerateIndexError(const std::string& what) : PipelineError("predictor", what) {}
};

}  // namespace lspred
