#pragma once

#include <stdexcept>
#include <string>

namespace fcsim {

// Base class for all library errors. The category is a short stable token
// ("invalid-argument", "numeric-error", ...) that the CLI prints as part of
// its one-line machine-parseable error output.
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& message)
        : std::runtime_error(message), category_(std::move(category)) {}

    const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& msg) : Error("invalid-argument", msg) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error("numeric-error", msg) {}
};

// Coupling normalization is impossible (e.g. empty structural matrix with
// alpha = 0, so SC + alpha*I has spectral radius 0).
class DegenerateNormalization : public Error {
public:
    explicit DegenerateNormalization(const std::string& msg)
        : Error("degenerate-normalization", msg) {}
};

// A time series node with zero variance; Pearson correlation is undefined.
class DegenerateSeries : public Error {
public:
    explicit DegenerateSeries(const std::string& msg) : Error("degenerate-series", msg) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& source, long line, const std::string& msg)
        : Error("parse-error", source + ":" + std::to_string(line) + ": " + msg), line_(line) {}

    long line() const noexcept { return line_; }

private:
    long line_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error("io-error", msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error("config-error", msg) {}
};

class MissingCellsError : public Error {
public:
    explicit MissingCellsError(const std::string& msg) : Error("missing-cells", msg) {}
};

}  // namespace fcsim
