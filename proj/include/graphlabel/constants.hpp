#pragma once

#include <cstddef>
#include <cstdint>

namespace graphlabel {

// Shared tolerances. Row-stochastic validation and label-row normalization
// use kRowSumTol; exact algebraic identities are checked against kAlgebraTol.
inline constexpr double kRowSumTol = 1e-9;
inline constexpr double kAlgebraTol = 1e-12;

// LU elimination treats a pivot below this magnitude as singular.
inline constexpr double kSingularPivot = 1e-12;

// Iterative-solver defaults.
inline constexpr double kDefaultTol = 1e-8;
inline constexpr int kDefaultMaxIter = 10000;

// Dense factorizations and eigensolves are refused above this order.
inline constexpr int kDenseThreshold = 2000;

// A single absorption walk may not exceed this many steps.
inline constexpr std::uint64_t kWalkStepCap = 1'000'000;

// Method defaults.
inline constexpr int kDefaultIcaIterations = 50;
inline constexpr int kDefaultWalkSteps = 8;
inline constexpr double kDefaultAlpha = 0.5;
inline constexpr double kDefaultBeta = 1.5;
inline constexpr double kDefaultLabeledInjection = 0.75;
inline constexpr std::uint64_t kDefaultWalksPerStart = 100'000;

}  // namespace graphlabel
