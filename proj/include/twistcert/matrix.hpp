#pragma once

#include "twistcert/rational_function.hpp"

#include <optional>
#include <span>
#include <vector>

namespace twistcert {

/// Dense row-major matrix over K.
class ScalarMatrix {
public:
    ScalarMatrix() = default;
    ScalarMatrix(std::size_t rows, std::size_t cols, const FieldSpec* field = FieldSpec::rationals());

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldSpec* field() const { return field_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Scalar> column(std::size_t j) const;
    ScalarMatrix select_columns(std::span<const std::size_t> cols) const;
    void append_row(std::span<const Scalar> row);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    const FieldSpec* field_ = FieldSpec::rationals();
    std::vector<Scalar> data_;
};

/// Exact rank, right null space and (for square input) determinant over K.
struct ScalarRankKernelDet {
    std::size_t rank = 0;
    std::vector<std::vector<Scalar>> kernel;
    std::optional<Scalar> det;
    std::vector<std::size_t> pivot_columns;
};

ScalarRankKernelDet rank_kernel_det(const ScalarMatrix& m);
std::size_t rank(const ScalarMatrix& m);
Scalar determinant(const ScalarMatrix& m);
/// Some x with m x = b, or nullopt if inconsistent.
std::optional<std::vector<Scalar>> solve(const ScalarMatrix& m, std::span<const Scalar> b);

/// Dense matrix of rational functions.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, int nvars, const FieldSpec* field = FieldSpec::rationals());

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int nvars() const { return nvars_; }
    const FieldSpec* field() const { return field_; }

    RationalFunction& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const RationalFunction& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    /// All entries constant; such matrices are handled by the scalar path.
    bool is_constant() const;
    ScalarMatrix to_scalar() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    int nvars_ = 0;
    const FieldSpec* field_ = FieldSpec::rationals();
    std::vector<RationalFunction> data_;
};

/// Rank over K(x), a polynomial basis of the right null space and the
/// determinant when square. Denominators are cleared row by row and the
/// resulting polynomial matrix is reduced by fraction-free (Bareiss)
/// elimination with exact divisions.
struct RankKernelDet {
    std::size_t rank = 0;
    std::vector<std::vector<MultiPoly>> kernel;
    std::optional<RationalFunction> det;
};

RankKernelDet rank_kernel_det(const Matrix& m);

} // namespace twistcert
