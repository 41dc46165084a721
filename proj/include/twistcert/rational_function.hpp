#pragma once

#include "twistcert/multipoly.hpp"

#include <optional>
#include <span>
#include <string>

namespace twistcert {

/// Element num/den of K(x0..x_{nvars-1}).
///
/// Fractions are not kept gcd-reduced. After every operation the scalar content
/// of the denominator (its leading coefficient) and common monomial factors are
/// stripped, and exact divisibility between denominators is exploited when
/// adding. Equality is decided by cross multiplication.
class RationalFunction {
public:
    explicit RationalFunction(int nvars = 0, const FieldSpec* field = FieldSpec::rationals());
    RationalFunction(MultiPoly num); // NOLINT(google-explicit-constructor)
    RationalFunction(MultiPoly num, MultiPoly den);

    static RationalFunction constant(int nvars, const Scalar& c, const FieldSpec* field);

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    int nvars() const { return num_.nvars(); }
    const FieldSpec* field() const { return num_.field(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const;
    bool is_polynomial() const { return den_.is_constant(); }

    /// Degree deg(num) - deg(den) when both are homogeneous; nullopt otherwise.
    /// UsageError on the zero function.
    std::optional<int> homogeneous_degree() const;

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& other);
    RationalFunction& operator-=(const RationalFunction& other);
    RationalFunction& operator*=(const RationalFunction& other);
    RationalFunction& operator/=(const RationalFunction& other);
    RationalFunction& operator*=(const Scalar& c);
    RationalFunction inverse() const;
    RationalFunction pow(unsigned exponent) const;

    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
    friend RationalFunction operator*(RationalFunction a, const Scalar& c) { return a *= c; }
    friend RationalFunction operator*(const Scalar& c, RationalFunction a) { return a *= c; }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b);
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    RationalFunction derivative(int var) const;

    /// PoleError when the denominator vanishes at the point.
    Scalar evaluate(std::span<const Scalar> point) const;

    /// "num" for polynomials, "(num)/(den)" otherwise.
    std::string to_string() const;

private:
    void normalize();

    MultiPoly num_;
    MultiPoly den_;
};

/// Substitutes rational functions for the variables of a polynomial.
RationalFunction compose(const MultiPoly& f, std::span<const RationalFunction> values);
RationalFunction compose(const RationalFunction& f, std::span<const RationalFunction> values);

std::optional<int> homogeneous_degree(const RationalFunction& f);

/// Exact value; PoleError if a denominator vanishes.
Scalar evaluate(const MultiPoly& f, std::span<const Scalar> point);
Scalar evaluate(const RationalFunction& f, std::span<const Scalar> point);

} // namespace twistcert
