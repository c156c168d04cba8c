#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace graphlabel {

// Minimal dense row-major matrix. Dense storage is confined to the solver
// layer and to small per-node row blocks such as label distributions.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    std::vector<double>& data() noexcept { return data_; }
    const std::vector<double>& data() const noexcept { return data_; }

    double row_sum(std::size_t i) const {
        const double* r = row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += r[j];
        return s;
    }

    bool row_is_zero(std::size_t i) const {
        const double* r = row(i);
        return std::all_of(r, r + cols_, [](double v) { return v == 0.0; });
    }

    void fill(double value) { std::fill(data_.begin(), data_.end(), value); }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend double max_abs_diff(const Matrix& a, const Matrix& b) {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        double m = 0.0;
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            m = std::max(m, std::abs(a.data_[k] - b.data_[k]));
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace graphlabel
