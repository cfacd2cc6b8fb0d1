// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace suc {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file (bad JSON, bad CSV row, wrong column set).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Input parsed fine but violates a data invariant. The message starts with
/// the offending field path, e.g. `generators[1] (g2).p_min`.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Reference to an id that does not exist (node, farm, scenario).
class ReferentialError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Array / vector sizes that do not match the instance they are used with.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Bad argument to an algorithm (cluster count out of range, empty cluster...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Something that cannot happen for well-formed models, e.g. an infeasible
/// recourse LP. Always a bug or a backend failure.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace suc
