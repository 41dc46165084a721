#pragma once

#include "twistcert/matrix.hpp"

#include <vector>

namespace twistcert::testing {

/// Laplace expansion along the first row.
inline Scalar cofactor_det(const std::vector<std::vector<Scalar>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return Scalar(1);
    if (n == 1) return m[0][0];
    Scalar acc(0);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Scalar>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Scalar> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        Scalar term = m[0][j] * cofactor_det(minor);
        if (j % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

/// Five-point stencil; exact for polynomials of degree <= 4 in the chosen variable.
inline Scalar stencil_derivative(const MultiPoly& f, std::vector<Scalar> point, int var, const Scalar& h) {
    auto at = [&](long k) {
        std::vector<Scalar> p = point;
        p[var] += Scalar(k) * h;
        return f.evaluate(p);
    };
    return (Scalar(-1) * at(2) + Scalar(8) * at(1) - Scalar(8) * at(-1) + at(-2)) / (Scalar(12) * h);
}

} // namespace twistcert::testing
