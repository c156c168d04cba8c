#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "graphlabel/config.hpp"
#include "graphlabel/graph.hpp"
#include "graphlabel/matrix.hpp"

namespace graphlabel {

struct WalkResult {
    LabelMatrix labels;
    int iterations_used = 0;
    double residual = 0.0;
    bool converged = true;
    std::vector<LabelId> hard_labels;    // per-node argmax, kNoLabel on zero rows
    std::optional<Matrix> unnormalized;  // regularize: solution before row rescaling
};

// Absorbing-walk label propagation solved directly: unlabeled rows satisfy
// (I - T_uu) X = T_ul Y_l, labeled rows pass through unchanged.
WalkResult lp_closed_form(const Graph& g, const LabelMatrix& y,
                          int dense_threshold = kDenseThreshold,
                          DanglingPolicy policy = DanglingPolicy::Reject);

// Same fixed point reached by repeated propagation with labeled rows clamped
// back to their seed values every iteration.
WalkResult lp_iterative(const Graph& g, const LabelMatrix& y, double tol = kDefaultTol,
                        int max_iter = kDefaultMaxIter,
                        DanglingPolicy policy = DanglingPolicy::Reject);

// Clamped two-term recurrence around the same fixed point; beta = 1 matches
// lp_iterative iterate for iterate.
WalkResult lp_second_order(const Graph& g, const LabelMatrix& y, double beta = kDefaultBeta,
                           double tol = kDefaultTol, int max_iter = kDefaultMaxIter,
                           DanglingPolicy policy = DanglingPolicy::Reject);

// Absorption frequencies estimated by simulated walks; deterministic given
// (master_seed, node id, walk index).
WalkResult lp_monte_carlo(const Graph& g, const LabelMatrix& y,
                          std::uint64_t walks = kDefaultWalksPerStart,
                          std::uint64_t master_seed = 1,
                          DanglingPolicy policy = DanglingPolicy::Reject);

// Non-absorbing walk run for exactly t steps; each node keeps the label mass
// that lands on labeled endpoints, renormalized. Zero landed mass gives a
// zero row.
WalkResult tstep_walk(const Graph& g, const LabelMatrix& y, int t = kDefaultWalkSteps,
                      DanglingPolicy policy = DanglingPolicy::Reject);

// Assembles the infinite-walk absorption operator from the leading
// eigenvectors of the absorbing-block matrix instead of a linear solve.
// Requires symmetric weights and label-connectivity.
WalkResult rendezvous(const Graph& g, const LabelMatrix& y,
                      int dense_threshold = kDenseThreshold,
                      DanglingPolicy policy = DanglingPolicy::Reject);

// Solves Y* = (1 - alpha)(I - alpha K)^-1 Y0 (closed) or iterates
// Y <- alpha K Y + (1 - alpha) Y0. Rows are rescaled to distributions
// afterward; the pre-rescaling solution is kept in WalkResult::unnormalized.
WalkResult regularize(const Graph& g, const LabelMatrix& y, double alpha = kDefaultAlpha,
                      KernelKind kernel = KernelKind::RowStochastic,
                      Route route = Route::Closed, double tol = kDefaultTol,
                      int max_iter = kDefaultMaxIter, int dense_threshold = kDenseThreshold,
                      DanglingPolicy policy = DanglingPolicy::Reject);

// Per-node retention probabilities: labeled_alpha on seeds, 1 elsewhere.
std::vector<double> default_injection(const LabelMatrix& y,
                                      double labeled_alpha = kDefaultLabeledInjection);

// Walk-with-termination labeling. Closed route solves
// (I - A T) Y* = (I - A) Y0 on the forward walk matrix after checking every
// node can reach a terminating state; iterative route applies the
// reversed-edge update Y <- A T_rev Y + (I - A) Y0, which agrees with the
// closed route on symmetric weights. Output rows are NOT rescaled.
WalkResult adsorption(const Graph& g, const LabelMatrix& y, const std::vector<double>& injection,
                      Route route = Route::Closed, double tol = kDefaultTol,
                      int max_iter = kDefaultMaxIter, int dense_threshold = kDenseThreshold,
                      DanglingPolicy policy = DanglingPolicy::Reject);

// Dispatches a MethodConfig to the matching method/route above (ICA methods
// included, wrapped into a WalkResult).
WalkResult run_method(const Graph& g, const LabelMatrix& y, const MethodConfig& cfg);

}  // namespace graphlabel
