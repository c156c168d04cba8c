#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "graphlabel/constants.hpp"
#include "graphlabel/graph.hpp"
#include "graphlabel/matrix.hpp"

namespace graphlabel {

struct IterationTrace {
    std::vector<double> residuals;  // max-norm change per iteration
    int iterations = 0;
    bool converged = false;
};

// Outcome of a batch of absorption walks from one start node.
struct WalkSample {
    std::uint64_t walks = 0;
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> counts;  // per node; nonzero only at labeled nodes

    // counts / walks. Total mass is exactly 1 in the integer counts.
    std::vector<double> frequency() const {
        std::vector<double> f(counts.size(), 0.0);
        for (std::size_t i = 0; i < counts.size(); ++i)
            f[i] = static_cast<double>(counts[i]) / static_cast<double>(walks);
        return f;
    }
};

// Solves A X = B by LU factorization with partial pivoting. A pivot below
// kSingularPivot raises a singular-system error.
Matrix linear_solve(Matrix a, const Matrix& b, int dense_threshold = kDenseThreshold);

// Applies `step(prev, next)` until the max-norm change falls to tol or
// max_iter is reached. Non-convergence is soft: the best iterate is returned
// with converged == false.
template <typename Step>
std::pair<Matrix, IterationTrace> fixed_point(Step&& step, Matrix y0, double tol, int max_iter) {
    IterationTrace trace;
    Matrix next(y0.rows(), y0.cols());
    for (int it = 1; it <= max_iter; ++it) {
        step(static_cast<const Matrix&>(y0), next);
        const double r = max_abs_diff(next, y0);
        trace.residuals.push_back(r);
        trace.iterations = it;
        std::swap(y0, next);
        if (r <= tol) {
            trace.converged = true;
            break;
        }
    }
    return {std::move(y0), trace};
}

// Two-term recurrence Y^{t+1} = beta F(Y^t) + (1-beta) Y^{t-1} around the
// same fixed point as F. beta == 1 reduces to fixed_point iterate-for-iterate
// (the combination step is skipped entirely, so traces match bit-for-bit).
template <typename Step>
std::pair<Matrix, IterationTrace> second_order_recurrence(Step&& step, Matrix y0, double beta,
                                                          double tol, int max_iter) {
    if (!(beta >= 1.0 && beta <= 2.0))
        throw InputError(Errc::config_error, "beta must lie in [1, 2]");
    if (beta == 1.0) return fixed_point(step, std::move(y0), tol, max_iter);

    IterationTrace trace;
    Matrix prev = y0;
    Matrix curr(y0.rows(), y0.cols());
    Matrix fy(y0.rows(), y0.cols());
    if (max_iter < 1) return {std::move(y0), trace};

    // Bootstrap with one plain application so the recurrence has two iterates.
    step(static_cast<const Matrix&>(prev), curr);
    trace.residuals.push_back(max_abs_diff(curr, prev));
    trace.iterations = 1;
    if (trace.residuals.back() <= tol) {
        trace.converged = true;
        return {std::move(curr), trace};
    }

    for (int it = 2; it <= max_iter; ++it) {
        step(static_cast<const Matrix&>(curr), fy);
        Matrix next(curr.rows(), curr.cols());
        for (std::size_t k = 0; k < next.data().size(); ++k)
            next.data()[k] = beta * fy.data()[k] + (1.0 - beta) * prev.data()[k];
        const double r = max_abs_diff(next, curr);
        trace.residuals.push_back(r);
        trace.iterations = it;
        prev = std::move(curr);
        curr = std::move(next);
        if (r <= tol) {
            trace.converged = true;
            break;
        }
    }
    return {std::move(curr), trace};
}

// Second-order iteration for Y -> P Y, optionally clamping rows listed in
// `clamp_rows` back to their y0 values after every application (the
// label-propagation usage).
std::pair<Matrix, IterationTrace> second_order(const TransitionMatrix& p, const Matrix& y0,
                                               double beta, double tol = kDefaultTol,
                                               int max_iter = kDefaultMaxIter,
                                               const std::vector<NodeId>& clamp_rows = {});

// Simulates `walks` absorbing random walks stepping by the rows of `t`,
// halting on nodes flagged in `labeled_flags`. Walk w draws from a generator
// derived from (master_seed, w) only, so results do not depend on schedule.
WalkSample monte_carlo_absorption(const TransitionMatrix& t, const std::vector<char>& labeled_flags,
                                  NodeId start, std::uint64_t walks, std::uint64_t master_seed);

// The l eigenpairs of largest magnitude of a dense square matrix, columns of
// the returned matrix paired with eigenvalues sorted descending by |lambda|.
// Complex leading pairs and numerically dependent eigenvectors are rejected.
std::pair<Matrix, std::vector<double>> leading_eigenvectors(const Matrix& p, int l,
                                                            int dense_threshold = kDenseThreshold);

}  // namespace graphlabel
