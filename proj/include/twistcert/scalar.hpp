#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace twistcert {

/// Coefficient field K: either Q or a simple extension Q[t]/(m(t)) with
/// deg m in {2, 3}. Instances are interned and live for the whole process,
/// so two fields are equal iff their pointers are equal.
class FieldSpec {
public:
    static const FieldSpec* rationals();

    /// `minimal_poly` holds coefficients from degree 0 upwards. It must be
    /// monic of degree 2 or 3 and irreducible over Q; UsageError otherwise.
    static const FieldSpec* extension(const std::vector<mpq_class>& minimal_poly);

    bool is_rationals() const { return minimal_poly_.empty(); }
    int degree() const { return degree_; }
    const std::vector<mpq_class>& minimal_poly() const { return minimal_poly_; }

    /// Reduced residue of t^k for 0 <= k <= 2*degree-2.
    const std::vector<mpq_class>& power_of_generator(int k) const { return powers_[k]; }

    /// "Q" or the minimal polynomial in the canonical grammar, e.g. "t^2+t+1".
    std::string to_string() const;

    FieldSpec(const FieldSpec&) = delete;
    FieldSpec& operator=(const FieldSpec&) = delete;

private:
    FieldSpec() = default;

    int degree_ = 1;
    std::vector<mpq_class> minimal_poly_;
    std::vector<std::vector<mpq_class>> powers_;
};

/// True iff the monic polynomial (coefficients low to high) has no rational root
/// and, for degree 2, a non-square discriminant. Degrees other than 2 and 3
/// are rejected with UsageError.
bool is_irreducible_low_degree(const std::vector<mpq_class>& monic);

/// Element of K stored as the reduced residue c_0 + c_1 t + ... modulo the
/// minimal polynomial. Elements of Q coerce into any extension on mixing.
class Scalar {
public:
    Scalar();
    Scalar(long value); // NOLINT(google-explicit-constructor)
    explicit Scalar(const mpq_class& value, const FieldSpec* field = FieldSpec::rationals());

    static Scalar from_coefficients(std::vector<mpq_class> coeffs, const FieldSpec* field);
    static Scalar generator(const FieldSpec* field);
    static Scalar zero(const FieldSpec* field) { return Scalar(mpq_class(0), field); }
    static Scalar one(const FieldSpec* field) { return Scalar(mpq_class(1), field); }

    const FieldSpec* field() const { return field_; }
    const std::vector<mpq_class>& coefficients() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    /// Lies in the prime field Q.
    bool is_rational() const;
    std::optional<mpq_class> as_rational() const;
    /// Rational and integral.
    bool is_integer() const;

    Scalar in_field(const FieldSpec* target) const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& other);
    Scalar& operator-=(const Scalar& other);
    Scalar& operator*=(const Scalar& other);
    Scalar& operator/=(const Scalar& other);
    Scalar inverse() const;
    Scalar pow(unsigned exponent) const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Canonical text: a polynomial in t, e.g. "-1/2*t+3".
    std::string to_string() const;

private:
    static const FieldSpec* common_field(const Scalar& a, const Scalar& b);
    void promote(const FieldSpec* target);

    const FieldSpec* field_;
    std::vector<mpq_class> coeffs_;
};

} // namespace twistcert
