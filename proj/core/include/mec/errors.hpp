#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace mec {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed or inconsistent input data (files, dimensions, non-finite values).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or command-line usage.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative solver hit its iteration cap. Carries the last iterate so
/// callers can inspect or reuse it.
class NotConverged : public std::runtime_error {
public:
    NotConverged(const std::string& what, Eigen::MatrixXd last_iterate)
        : std::runtime_error(what), last_iterate_(std::move(last_iterate)) {}

    const Eigen::MatrixXd& last_iterate() const noexcept { return last_iterate_; }

private:
    Eigen::MatrixXd last_iterate_;
};

}  // namespace mec
