#pragma once

#include <stdexcept>
#include <string>

namespace rsl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rejections caused by the requested parameters (regime, degenerate values).
class RegimeError : public Error {
public:
    using Error::Error;
};

class SchoutenSingular : public RegimeError {
public:
    explicit SchoutenSingular(const std::string& what)
        : RegimeError("Schouten value rho = 1/(2(n-1)) is singular: " + what) {}
};

class NotSteady : public RegimeError {
public:
    using RegimeError::RegimeError;
};

class OutOfRegime : public RegimeError {
public:
    using RegimeError::RegimeError;
};

class InvalidParameters : public RegimeError {
public:
    using RegimeError::RegimeError;
};

class DenominatorZero : public Error {
public:
    DenominatorZero(double x, double y)
        : Error("denominator vanishes at (x, y) = (" + std::to_string(x) + ", " + std::to_string(y) + ")"),
          x_(x), y_(y) {}
    double x() const { return x_; }
    double y() const { return y_; }

private:
    double x_;
    double y_;
};

class IntegratorError : public Error {
public:
    using Error::Error;
};

class BlowUp : public IntegratorError {
public:
    using IntegratorError::IntegratorError;
};

class StepLimit : public IntegratorError {
public:
    using IntegratorError::IntegratorError;
};

class StepSizeUnderflow : public IntegratorError {
public:
    using IntegratorError::IntegratorError;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

// Convergence failures (CLI exit code 3).
class ConvergenceError : public Error {
public:
    using Error::Error;
};

class NotConverged : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class AnchoringFailed : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class NoEventWithinSpan : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class NonpositiveTipCurvature : public Error {
public:
    using Error::Error;
};

class TipSingular : public Error {
public:
    using Error::Error;
};

class CriticalLevel : public Error {
public:
    using Error::Error;
};

class NonpositiveData : public Error {
public:
    using Error::Error;
};

class TailTooShort : public Error {
public:
    using Error::Error;
};

class GaugeViolation : public Error {
public:
    using Error::Error;
};

class EvaluationError : public Error {
public:
    using Error::Error;
};

}  // namespace rsl
