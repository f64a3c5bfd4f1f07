#pragma once

#include <stdexcept>
#include <string>

namespace bvpcorr {

/// Base class of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, double last_norm)
        : Error(what), last_residual_norm(last_norm) {}
    double last_residual_norm;
};

class DivergedToNonFinite : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class PointOutsideInterval : public Error {
public:
    using Error::Error;
};

class DegreeTooSmall : public Error {
public:
    using Error::Error;
};

class DegreeTooLarge : public Error {
public:
    using Error::Error;
};

class UnsupportedOrder : public Error {
public:
    using Error::Error;
};

class NonFiniteIntegrand : public Error {
public:
    using Error::Error;
};

class GridTooCoarse : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class NonPositiveInput : public Error {
public:
    using Error::Error;
};

class UnknownProblem : public Error {
public:
    using Error::Error;
};

class LambdaOutOfRange : public Error {
public:
    using Error::Error;
};

class NoExactSolution : public Error {
public:
    using Error::Error;
};

class BaseNotConverged : public Error {
public:
    using Error::Error;
};

/// Misuse of an API outside the named error conditions (bad constructor
/// arguments, unsupported boundary-condition combinations, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace bvpcorr
