#pragma once

#include <vector>

#include "fbheat/errors.hpp"

namespace fbheat {

/// Minimal column-major dense matrix for the hand-rolled kernels
/// (QR eigenvalues, one-sided Jacobi SVD) that must run in scalar types
/// Eigen is not used with here (DD, plain double workspaces).
template <class Scalar>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, Scalar(0)) {
        if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Scalar& operator()(int i, int j) { return data_[static_cast<size_t>(j) * rows_ + i]; }
    const Scalar& operator()(int i, int j) const {
        return data_[static_cast<size_t>(j) * rows_ + i];
    }

    Scalar* col(int j) { return data_.data() + static_cast<size_t>(j) * rows_; }
    const Scalar* col(int j) const { return data_.data() + static_cast<size_t>(j) * rows_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Scalar> data_;
};

} // namespace fbheat
