// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace solmig {

// Position inside a source file, 1-based. offset is the byte index.
struct SourcePos {
    uint32_t line = 1;
    uint32_t column = 1;
    uint32_t offset = 0;
};

// Half-open byte range [offset, offset+length) with the start position.
struct Span {
    uint32_t offset = 0;
    uint32_t length = 0;
    uint32_t line = 1;
    uint32_t column = 1;

    uint32_t end() const { return offset + length; }
};

// Base for all solmig errors. exit_code() maps an error class to the
// process exit code used by the CLI.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual int exit_code() const { return 1; }
};

namespace detail {
inline std::string with_pos(const std::string& msg, uint32_t line, uint32_t col) {
    return std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
}
} // namespace detail

// Lexing / parsing / unsupported-construct diagnostics.
class FrontendError : public Error {
public:
    FrontendError(const std::string& msg, uint32_t line, uint32_t col)
        : Error(detail::with_pos(msg, line, col)), line(line), column(col) {}
    explicit FrontendError(const std::string& msg) : Error(msg) {}
    int exit_code() const override { return 2; }

    uint32_t line = 0;
    uint32_t column = 0;
};

class LexError : public FrontendError {
public:
    using FrontendError::FrontendError;
};

class ParseError : public FrontendError {
public:
    using FrontendError::FrontendError;
};

// A construct the grammar recognizes but the subset rejects.
class UnsupportedError : public FrontendError {
public:
    using FrontendError::FrontendError;
};

// Layout computation, dependency analysis, state encode/decode, sharding.
class AnalysisError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

class LayoutError : public AnalysisError {
public:
    using AnalysisError::AnalysisError;
};

class StateError : public AnalysisError {
public:
    using AnalysisError::AnalysisError;
};

// Batch planning failures (e.g. gas limit below the single-write minimum).
class PlanError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 4; }
};

// Simulation failures: divergence from the source snapshot, gas violations.
class SimError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 5; }
};

class DivergenceError : public SimError {
public:
    using SimError::SimError;
};

// Bad configuration (weights, flags, malformed input files).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace solmig
