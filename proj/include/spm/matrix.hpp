#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace spm {

/// Dense row-major matrix of doubles. Only what the model needs: element
/// access, row views and a few reductions.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return values_.empty(); }

    double& operator()(std::size_t r, std::size_t c) noexcept {
        assert(r < rows_ && c < cols_);
        return values_[r * cols_ + c];
    }
    double operator()(std::size_t r, std::size_t c) const noexcept {
        assert(r < rows_ && c < cols_);
        return values_[r * cols_ + c];
    }

    std::span<double> row(std::size_t r) noexcept { return {values_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept {
        return {values_.data() + r * cols_, cols_};
    }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    double sum() const noexcept {
        double total = 0.0;
        for (double v : values_) total += v;
        return total;
    }

    double row_sum(std::size_t r) const noexcept {
        double total = 0.0;
        for (double v : row(r)) total += v;
        return total;
    }

    void fill(double v) noexcept {
        for (double& x : values_) x = v;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

}  // namespace spm
