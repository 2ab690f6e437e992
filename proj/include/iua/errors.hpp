#pragma once

#include <stdexcept>
#include <string>

namespace iua {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class NumericOverflowError : public Error {
public:
    using Error::Error;
};

class NotSquashableError : public Error {
public:
    using Error::Error;
};

class DegenerateLimitsError : public Error {
public:
    using Error::Error;
};

class CalibrationRequiredError : public Error {
public:
    using Error::Error;
};

class LimitsUnreachableError : public Error {
public:
    using Error::Error;
};

class CellTooSmallError : public Error {
public:
    using Error::Error;
};

class ThetaBudgetError : public Error {
public:
    using Error::Error;
};

class GridExplosionError : public Error {
public:
    using Error::Error;
};

class InconsistentLipschitzError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class EmptyAbstractionError : public Error {
public:
    using Error::Error;
};

class TransformerUnavailableError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class GadgetBudgetError : public Error {
public:
    using Error::Error;
};

class OracleInfeasibleError : public Error {
public:
    using Error::Error;
};

} // namespace iua
