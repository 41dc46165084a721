#include "twistcert/matrix.hpp"

#include "twistcert/errors.hpp"

#include <algorithm>

namespace twistcert {

ScalarMatrix::ScalarMatrix(std::size_t rows, std::size_t cols, const FieldSpec* field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Scalar::zero(field)) {}

std::vector<Scalar> ScalarMatrix::column(std::size_t j) const {
    std::vector<Scalar> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
}

ScalarMatrix ScalarMatrix::select_columns(std::span<const std::size_t> cols) const {
    ScalarMatrix out(rows_, cols.size(), field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = (*this)(i, cols[k]);
    return out;
}

void ScalarMatrix::append_row(std::span<const Scalar> row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw UsageError("row length does not match the matrix");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

ScalarRankKernelDet rank_kernel_det(const ScalarMatrix& m) {
    const std::size_t R = m.rows();
    const std::size_t C = m.cols();
    std::vector<std::vector<Scalar>> a(R, std::vector<Scalar>(C));
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) a[i][j] = m(i, j);

    ScalarRankKernelDet out;
    Scalar det = Scalar::one(m.field());
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && a[p][c].is_zero()) ++p;
        if (p == R) continue;
        if (p != r) {
            std::swap(a[p], a[r]);
            det = -det;
        }
        const Scalar piv = a[r][c];
        det *= piv;
        const Scalar inv = piv.inverse();
        for (std::size_t j = c; j < C; ++j)
            if (!a[r][j].is_zero()) a[r][j] *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const Scalar f = a[i][c];
            for (std::size_t j = c; j < C; ++j)
                if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
        }
        out.pivot_columns.push_back(c);
        ++r;
    }
    out.rank = r;
    if (R == C) out.det = (r == R) ? det : Scalar::zero(m.field());

    std::vector<bool> is_pivot(C, false);
    for (auto c : out.pivot_columns) is_pivot[c] = true;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(C, Scalar::zero(m.field()));
        v[f] = Scalar::one(m.field());
        for (std::size_t k = 0; k < out.pivot_columns.size(); ++k) v[out.pivot_columns[k]] = -a[k][f];
        out.kernel.push_back(std::move(v));
    }
    return out;
}

std::size_t rank(const ScalarMatrix& m) { return rank_kernel_det(m).rank; }

Scalar determinant(const ScalarMatrix& m) {
    if (m.rows() != m.cols()) throw UsageError("determinant of a non-square matrix");
    return *rank_kernel_det(m).det;
}

std::optional<std::vector<Scalar>> solve(const ScalarMatrix& m, std::span<const Scalar> b) {
    if (b.size() != m.rows()) throw UsageError("right-hand side has the wrong length");
    ScalarMatrix aug(m.rows(), m.cols() + 1, m.field());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    // Kernel vectors of [m | b] with last entry 1 give -x.
    const auto res = rank_kernel_det(aug);
    for (const auto& k : res.kernel) {
        if (k.back().is_zero()) continue;
        const Scalar scale = -k.back().inverse();
        std::vector<Scalar> x(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) x[j] = k[j] * scale;
        return x;
    }
    return std::nullopt;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, int nvars, const FieldSpec* field)
    : rows_(rows), cols_(cols), nvars_(nvars), field_(field), data_(rows * cols, RationalFunction(nvars, field)) {}

bool Matrix::is_constant() const {
    for (const auto& e : data_)
        if (!e.is_constant()) return false;
    return true;
}

ScalarMatrix Matrix::to_scalar() const {
    ScalarMatrix out(rows_, cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const auto& e = (*this)(i, j);
            if (!e.is_constant()) throw UsageError("matrix entry is not constant");
            out(i, j) = e.num().constant_term() / e.den().constant_term();
        }
    return out;
}

namespace {

MultiPoly one_poly(int nvars, const FieldSpec* field) {
    return MultiPoly::constant(nvars, Scalar::one(field), field);
}

MultiPoly exact(const MultiPoly& a, const MultiPoly& b) {
    auto q = a.divide_exact(b);
    if (!q) throw std::logic_error("fraction-free elimination: inexact division");
    return *q;
}

} // namespace

RankKernelDet rank_kernel_det(const Matrix& m) {
    const int nv = m.nvars();
    const FieldSpec* field = m.field();
    RankKernelDet out;

    const std::size_t R = m.rows();
    const std::size_t C = m.cols();

    // Clear denominators row by row.
    std::vector<std::vector<MultiPoly>> a(R, std::vector<MultiPoly>(C, MultiPoly(nv, field)));
    RationalFunction row_scale = RationalFunction::constant(nv, Scalar::one(field), field);
    for (std::size_t i = 0; i < R; ++i) {
        MultiPoly L = one_poly(nv, field);
        for (std::size_t j = 0; j < C; ++j) {
            const auto& den = m(i, j).den();
            if (den.is_constant()) continue;
            if (!L.divide_exact(den)) L = L * den;
        }
        for (std::size_t j = 0; j < C; ++j) {
            const auto& e = m(i, j);
            if (e.is_zero()) continue;
            a[i][j] = e.num() * exact(L, e.den());
        }
        row_scale *= RationalFunction(L);
    }

    // Fraction-free elimination; entries below each pivot become zero.
    MultiPoly prev = one_poly(nv, field);
    std::vector<std::size_t> pivots;
    bool negate = false;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && a[p][c].is_zero()) ++p;
        if (p == R) continue;
        if (p != r) {
            std::swap(a[p], a[r]);
            negate = !negate;
        }
        for (std::size_t i = r + 1; i < R; ++i) {
            for (std::size_t j = c + 1; j < C; ++j) {
                MultiPoly v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                a[i][j] = prev.is_constant() ? v * prev.leading_coefficient().inverse() : exact(v, prev);
            }
            a[i][c] = MultiPoly(nv, field);
        }
        prev = a[r][c];
        pivots.push_back(c);
        ++r;
    }
    out.rank = r;

    if (R == C) {
        if (r == R) {
            RationalFunction d(negate ? -a[R - 1][C - 1] : a[R - 1][C - 1]);
            out.det = d / row_scale;
        } else {
            out.det = RationalFunction(nv, field);
        }
    }

    std::vector<bool> is_pivot(C, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        // Fraction-free back substitution: scale the partial solution by the
        // pivot only when the pivot does not divide the running sum.
        std::vector<MultiPoly> v(C, MultiPoly(nv, field));
        v[f] = one_poly(nv, field);
        for (std::size_t k = pivots.size(); k-- > 0;) {
            const std::size_t pc = pivots[k];
            MultiPoly acc(nv, field);
            for (std::size_t j = pc + 1; j < C; ++j)
                if (!a[k][j].is_zero() && !v[j].is_zero()) acc += a[k][j] * v[j];
            if (acc.is_zero()) continue;
            if (auto q = acc.divide_exact(a[k][pc])) {
                v[pc] = -*q;
            } else {
                for (auto& e : v)
                    if (!e.is_zero()) e *= a[k][pc];
                v[pc] = -acc;
            }
        }
        Exponent content{};
        bool first = true;
        for (const auto& e : v) {
            if (e.is_zero()) continue;
            const Exponent m = e.monomial_content();
            if (first) content = m;
            for (int i = 0; i < kMaxVars; ++i) content[i] = std::min(content[i], m[i]);
            first = false;
        }
        for (auto& e : v) e = e.divide_by_monomial(content);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

} // namespace twistcert
