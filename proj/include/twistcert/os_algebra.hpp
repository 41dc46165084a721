#pragma once

#include "twistcert/arrangement.hpp"

#include <map>
#include <memory>
#include <span>
#include <vector>

namespace twistcert {

/// Homogeneous element of an Orlik-Solomon algebra, in nbc coordinates.
struct OSElement {
    int degree = 0;
    std::vector<Scalar> coords;

    bool is_zero() const;
};

/// Orlik-Solomon algebra of a central or affine arrangement with the nbc basis
/// for a fixed linear order of the hyperplanes. Monomials whose hyperplanes do
/// not meet are zero. Index arguments always refer to the arrangement's own
/// numbering.
class OSAlgebra {
public:
    /// `order` lists hyperplane indices from smallest to largest; input order by default.
    explicit OSAlgebra(Arrangement a, std::vector<std::size_t> order = {});

    const Arrangement& arrangement() const { return original_; }
    const std::vector<std::size_t>& order() const { return order_; }
    const FieldSpec* field() const { return original_.field(); }

    int top_degree() const { return static_cast<int>(basis_.size()) - 1; }
    std::size_t dim(int k) const;
    std::vector<std::size_t> dims() const;
    /// nbc monomials of degree k, each listed by increasing position in the order.
    const std::vector<std::vector<std::size_t>>& basis(int k) const;

    OSElement zero(int k) const;
    OSElement basis_element(int k, std::size_t i) const;
    /// e_{i1} ^ ... ^ e_{ik} in the given order of factors.
    OSElement monomial(std::span<const std::size_t> indices) const;
    /// sum over H of weights[H] e_H.
    OSElement degree_one(std::span<const Scalar> weights) const;

    OSElement wedge(const OSElement& x, const OSElement& y) const;
    /// d[e_{i1} : ... : e_{ik}] = sum_j (-1)^{j-1} e_{i1} ^ .. omit i_j .. ^ e_{ik}.
    /// UsageError for affine arrangements, where the derivation is not defined.
    OSElement derivation(std::span<const std::size_t> indices) const;
    OSElement derivation(const OSElement& x) const;
    /// Matrix of y -> a ^ y from degree k to degree k+1.
    ScalarMatrix left_multiplication(const OSElement& a, int k) const;

    /// Every relation d e_C = 0 (C a circuit with nonempty intersection) reduces to 0.
    bool relations_hold() const;

private:
    using Sparse = std::map<HyperplaneSet, Scalar>;
    const Sparse& reduce(HyperplaneSet positions) const;
    HyperplaneSet to_positions(std::span<const std::size_t> indices, int& sign) const;
    bool is_nbc(HyperplaneSet positions) const;
    OSElement from_sparse(int k, const Sparse& s, const Scalar& factor) const;
    void accumulate(OSElement& into, int k, const Sparse& s, const Scalar& factor) const;

    Arrangement original_;
    Arrangement permuted_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> position_;
    std::vector<std::vector<std::vector<std::size_t>>> basis_;
    std::vector<std::map<HyperplaneSet, std::size_t>> basis_index_;
    struct Memo;
    std::shared_ptr<Memo> memo_;
};

} // namespace twistcert
