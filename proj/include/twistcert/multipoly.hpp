#pragma once

#include "twistcert/scalar.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

namespace twistcert {

inline constexpr int kMaxVars = 16;

/// Dense exponent vector; entries past nvars are zero.
using Exponent = std::array<std::uint16_t, kMaxVars>;

int total_degree(const Exponent& e);

/// Graded-lexicographic order, larger monomials first.
struct GrlexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Sparse polynomial in K[x0..x_{nvars-1}]. Stored coefficients are never zero.
class MultiPoly {
public:
    using TermMap = std::map<Exponent, Scalar, GrlexGreater>;

    explicit MultiPoly(int nvars = 0, const FieldSpec* field = FieldSpec::rationals());

    static MultiPoly constant(int nvars, const Scalar& c, const FieldSpec* field);
    static MultiPoly variable(int nvars, int index, const FieldSpec* field);
    static MultiPoly monomial(int nvars, const Exponent& e, const Scalar& c, const FieldSpec* field);

    int nvars() const { return nvars_; }
    const FieldSpec* field() const { return field_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant coefficient (zero if absent).
    Scalar constant_term() const;
    /// Coefficient of a monomial (zero if absent).
    Scalar coefficient(const Exponent& e) const;

    /// -1 for the zero polynomial.
    int total_degree() const;
    /// Degree if every term has the same total degree; nullopt otherwise or for zero.
    std::optional<int> homogeneous_degree() const;
    int degree_in(int var) const;

    const Exponent& leading_exponent() const;
    const Scalar& leading_coefficient() const;

    /// Adds c * x^e in place.
    void add_term(const Exponent& e, const Scalar& c);

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& other);
    MultiPoly& operator-=(const MultiPoly& other);
    MultiPoly& operator*=(const MultiPoly& other);
    MultiPoly& operator*=(const Scalar& c);
    MultiPoly pow(unsigned exponent) const;

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Scalar& c) { return a *= c; }
    friend MultiPoly operator*(const Scalar& c, MultiPoly a) { return a *= c; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly derivative(int var) const;
    Scalar evaluate(std::span<const Scalar> point) const;

    /// Quotient when `divisor` divides this exactly, nullopt otherwise.
    std::optional<MultiPoly> divide_exact(const MultiPoly& divisor) const;

    /// Componentwise minimum exponent over all terms (zero vector for zero).
    Exponent monomial_content() const;
    /// Divides every term by x^e; e must divide each term.
    MultiPoly divide_by_monomial(const Exponent& e) const;

    /// Same polynomial with one more or fewer variable slots; removed variables
    /// must not occur.
    MultiPoly with_nvars(int nvars) const;
    MultiPoly in_field(const FieldSpec* field) const;

    /// Canonical text in the grlex term order; parse_poly inverts it exactly.
    std::string to_string() const;

private:
    void check_compatible(const MultiPoly& other) const;

    int nvars_;
    const FieldSpec* field_;
    TermMap terms_;
};

enum class PolyOp { add, sub, mul };

/// Exact add/sub/mul; UsageError on mismatched variable count or field.
MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op);

/// Formal partial derivative; UsageError if var is out of range.
MultiPoly partial_derivative(const MultiPoly& f, int var);

} // namespace twistcert
