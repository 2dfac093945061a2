#pragma once

#include <stdexcept>
#include <string>

namespace ozf {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InconclusiveWinding : Error {
    using Error::Error;
};

struct UnstablePlant : Error {
    using Error::Error;
};

struct NotHyperdominant : Error {
    using Error::Error;
};

struct NotZeroExcess : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct DecompositionStalled : Error {
    using Error::Error;
};

struct BandInfeasible : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct NotSimilarlyOrdered : Error {
    using Error::Error;
};

struct DeltaTooLarge : Error {
    using Error::Error;
};

struct LpNumericalFailure : Error {
    using Error::Error;
};

struct HorizonNotMultipleOfPeriod : Error {
    using Error::Error;
};

struct SlaterViolated : Error {
    using Error::Error;
};

struct WellPosednessUnverifiable : Error {
    using Error::Error;
};

struct BisectionFailure : Error {
    using Error::Error;
};

}  // namespace ozf
