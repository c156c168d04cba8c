#include "graphlabel/solve.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphlabel/rng.hpp"

namespace graphlabel {

Matrix linear_solve(Matrix a, const Matrix& b, int dense_threshold) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw InputError(Errc::size_mismatch, "coefficient matrix must be square");
    if (b.rows() != n) throw InputError(Errc::size_mismatch, "right-hand side row count mismatch");
    if (n > static_cast<std::size_t>(dense_threshold))
        throw InputError(Errc::config_error,
                         "system order " + std::to_string(n) + " exceeds the dense threshold " +
                             std::to_string(dense_threshold));

    Matrix x = b;
    const std::size_t m = b.cols();
    // In-place LU with partial pivoting, eliminating into the solution.
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best < kSingularPivot)
            throw NumericError(Errc::singular_system,
                               "pivot " + std::to_string(best) + " below threshold at column " +
                                   std::to_string(col));
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            for (std::size_t j = 0; j < m; ++j) std::swap(x(col, j), x(pivot, j));
        }
        const double d = a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / d;
            if (f == 0.0) continue;
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
            for (std::size_t j = 0; j < m; ++j) x(r, j) -= f * x(col, j);
            a(r, col) = 0.0;
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        const double d = a(col, col);
        for (std::size_t j = 0; j < m; ++j) x(col, j) /= d;
        for (std::size_t r = 0; r < col; ++r) {
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j) x(r, j) -= f * x(col, j);
        }
    }
    return x;
}

std::pair<Matrix, IterationTrace> second_order(const TransitionMatrix& p, const Matrix& y0,
                                               double beta, double tol, int max_iter,
                                               const std::vector<NodeId>& clamp_rows) {
    auto step = [&](const Matrix& in, Matrix& out) {
        p.multiply_into(in, out);
        for (NodeId i : clamp_rows) {
            const double* src = y0.row(static_cast<std::size_t>(i));
            std::copy(src, src + y0.cols(), out.row(static_cast<std::size_t>(i)));
        }
    };
    auto [y, trace] = second_order_recurrence(step, y0, beta, tol, max_iter);
    // Re-pin clamped rows: the beta-combination of two clamped iterates can
    // drift by rounding.
    for (NodeId i : clamp_rows) {
        const double* src = y0.row(static_cast<std::size_t>(i));
        std::copy(src, src + y0.cols(), y.row(static_cast<std::size_t>(i)));
    }
    return {std::move(y), trace};
}

WalkSample monte_carlo_absorption(const TransitionMatrix& t, const std::vector<char>& labeled_flags,
                                  NodeId start, std::uint64_t walks, std::uint64_t master_seed) {
    const NodeId n = t.n();
    if (labeled_flags.size() != static_cast<std::size_t>(n))
        throw InputError(Errc::size_mismatch, "labeled flag vector does not match matrix order");
    if (start < 0 || start >= n)
        throw InputError(Errc::node_id_out_of_range, "walk start node out of range");
    if (walks == 0) throw InputError(Errc::config_error, "walk count must be positive");

    WalkSample sample;
    sample.walks = walks;
    sample.master_seed = master_seed;
    sample.counts.assign(static_cast<std::size_t>(n), 0);

    for (std::uint64_t w = 0; w < walks; ++w) {
        SplitMix64 rng = stream_rng(master_seed, w);
        NodeId cur = start;
        std::uint64_t steps = 0;
        while (!labeled_flags[static_cast<std::size_t>(cur)]) {
            if (steps++ >= kWalkStepCap)
                throw NumericError(Errc::walk_length_cap,
                                   "walk " + std::to_string(w) + " exceeded " +
                                       std::to_string(kWalkStepCap) + " steps");
            const double u = rng.uniform01();
            auto tgts = t.row_targets(cur);
            auto vals = t.row_values(cur);
            double cum = 0.0;
            NodeId next = tgts.back();
            for (std::size_t k = 0; k < tgts.size(); ++k) {
                cum += vals[k];
                if (u < cum) {
                    next = tgts[k];
                    break;
                }
            }
            cur = next;
        }
        ++sample.counts[static_cast<std::size_t>(cur)];
    }
    return sample;
}

std::pair<Matrix, std::vector<double>> leading_eigenvectors(const Matrix& p, int l,
                                                            int dense_threshold) {
    const std::size_t n = p.rows();
    if (p.cols() != n) throw InputError(Errc::size_mismatch, "matrix must be square");
    if (l < 1 || static_cast<std::size_t>(l) > n)
        throw InputError(Errc::size_mismatch, "requested eigenpair count out of range");
    if (n > static_cast<std::size_t>(dense_threshold))
        throw InputError(Errc::config_error, "matrix order exceeds the dense threshold");

    Eigen::MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = p(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success)
        throw NumericError(Errc::eigensolver_failure, "dense eigendecomposition did not converge");

    const auto& values = es.eigenvalues();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const double mx = std::abs(values(static_cast<Eigen::Index>(x)));
        const double my = std::abs(values(static_cast<Eigen::Index>(y)));
        if (mx != my) return mx > my;
        return values(static_cast<Eigen::Index>(x)).real() >
               values(static_cast<Eigen::Index>(y)).real();
    });

    Matrix vectors(n, static_cast<std::size_t>(l));
    std::vector<double> eigenvalues(static_cast<std::size_t>(l));
    for (int c = 0; c < l; ++c) {
        const auto idx = static_cast<Eigen::Index>(order[static_cast<std::size_t>(c)]);
        const std::complex<double> lambda = values(idx);
        if (std::abs(lambda.imag()) > 1e-9 * std::max(1.0, std::abs(lambda.real())))
            throw NumericError(Errc::eigensolver_failure,
                               "leading eigenvalue " + std::to_string(c) +
                                   " has a significant imaginary part");
        eigenvalues[static_cast<std::size_t>(c)] = lambda.real();
        // Deterministic sign: largest-magnitude component is made positive.
        Eigen::VectorXd v = es.eigenvectors().col(idx).real();
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0.0) v = -v;
        const double norm = v.norm();
        if (norm == 0.0)
            throw NumericError(Errc::defective_matrix, "eigenvector column is numerically zero");
        for (std::size_t i = 0; i < n; ++i)
            vectors(i, static_cast<std::size_t>(c)) = v(static_cast<Eigen::Index>(i)) / norm;
    }

    // Numerically dependent columns signal a defective (non-diagonalizable)
    // leading block, which downstream assembly cannot use.
    if (l > 1) {
        Matrix gram(static_cast<std::size_t>(l), static_cast<std::size_t>(l));
        for (int r = 0; r < l; ++r)
            for (int c = 0; c < l; ++c) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    dot += vectors(i, static_cast<std::size_t>(r)) *
                           vectors(i, static_cast<std::size_t>(c));
                gram(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = dot;
            }
        try {
            linear_solve(std::move(gram), Matrix::identity(static_cast<std::size_t>(l)));
        } catch (const NumericError&) {
            throw NumericError(Errc::defective_matrix,
                               "leading eigenvectors are numerically dependent");
        }
    }
    return {std::move(vectors), std::move(eigenvalues)};
}

}  // namespace graphlabel
