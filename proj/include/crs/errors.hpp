#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace crs {

// Base class for everything the pipeline can throw. The CLI maps subclasses
// to stable exit codes (see cli/commands.hpp).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem trouble: missing files, unreadable paths, write failures.
class IoError : public Error {
public:
    using Error::Error;
};

// Bad user input or violated operation precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A persisted artifact failed schema validation. `pointer` is a JSON pointer
// to the offending field.
class SchemaError : public Error {
public:
    SchemaError(const std::string& what, std::string pointer)
        : Error(what + " (at " + pointer + ")"), pointer_(std::move(pointer)) {}

    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

// Provider call failed after the configured retries. Carries the chunk index
// when the failure happened during triplet extraction.
class BackendError : public Error {
public:
    using Error::Error;
    BackendError(const std::string& what, std::size_t chunk_index)
        : Error(what + " (chunk " + std::to_string(chunk_index) + ")"),
          chunk_index_(chunk_index) {}

    std::optional<std::size_t> chunk_index() const { return chunk_index_; }

private:
    std::optional<std::size_t> chunk_index_;
};

// Authentication rejected by the provider. Never retried.
class AuthError : public BackendError {
public:
    using BackendError::BackendError;
};

class EmptyDocumentError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidSeedsError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidKError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ZeroVectorError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DimensionMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EmptyGroundTruthError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Power iteration did not reach the requested residual.
class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const { return residual_; }

private:
    double residual_;
};

}  // namespace crs
