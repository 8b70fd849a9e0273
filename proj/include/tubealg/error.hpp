#pragma once

#include <stdexcept>
#include <string>

namespace tubealg {

/// Malformed or inconsistent input data (schemas, tables, labels).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that parses but violates a mathematical axiom the operation needs,
/// e.g. a non-associative Cayley table or a cochain that is not a cocycle.
class ValidationError : public InputError {
public:
    using InputError::InputError;
};

/// An operation that is well-posed but not available for this data, such as
/// the involution of an algebra built without rigidity data.
class Unsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tubealg
