#pragma once

#include "twistcert/rational_function.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace twistcert {

/// Set of differentials dx_i, bit i for x_i.
using FormMask = std::uint32_t;

std::vector<int> mask_indices(FormMask mask);
FormMask indices_mask(std::span<const int> indices);

/// Orders masks by size, then lexicographically by their sorted index tuples.
struct MaskLex {
    bool operator()(FormMask a, FormMask b) const;
};

/// Degree-p alternating form sum_I f_I dx_I over K(x0..x_{nvars-1}).
class DiffForm {
public:
    using TermMap = std::map<FormMask, RationalFunction, MaskLex>;

    explicit DiffForm(int nvars = 0, int degree = 0, const FieldSpec* field = FieldSpec::rationals());

    static DiffForm function(const RationalFunction& f);
    static DiffForm dx(int nvars, int index, const FieldSpec* field = FieldSpec::rationals());
    static DiffForm monomial(int nvars, std::span<const int> indices, const RationalFunction& coeff);

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    const FieldSpec* field() const { return field_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Coefficient of dx_I; I must have `degree` entries.
    RationalFunction coefficient(FormMask mask) const;
    RationalFunction coefficient(std::span<const int> indices) const;

    /// Adds c dx_I where the indices may be unsorted; repeated indices give 0.
    void add_term(std::span<const int> indices, const RationalFunction& c);
    void add_term(FormMask mask, const RationalFunction& c);

    DiffForm operator-() const;
    DiffForm& operator+=(const DiffForm& other);
    DiffForm& operator-=(const DiffForm& other);
    DiffForm& operator*=(const RationalFunction& f);
    DiffForm& operator*=(const Scalar& c);

    friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
    friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }
    friend DiffForm operator*(DiffForm a, const RationalFunction& f) { return a *= f; }
    friend DiffForm operator*(const RationalFunction& f, DiffForm a) { return a *= f; }
    friend DiffForm operator*(DiffForm a, const Scalar& c) { return a *= c; }
    friend DiffForm operator*(const Scalar& c, DiffForm a) { return a *= c; }
    friend bool operator==(const DiffForm& a, const DiffForm& b);
    friend bool operator!=(const DiffForm& a, const DiffForm& b) { return !(a == b); }

    /// "0", or terms "(f)*dx0^dx2" joined by " + "; degree-0 terms print as "(f)".
    std::string to_string() const;

private:
    void check_compatible(const DiffForm& other) const;

    int nvars_;
    int degree_;
    const FieldSpec* field_;
    TermMap terms_;
};

/// Sign of sorting the concatenation of two disjoint index sets.
int wedge_sign(FormMask a, FormMask b);

DiffForm wedge(const DiffForm& a, const DiffForm& b);
DiffForm wedge(std::span<const DiffForm> forms);
DiffForm exterior_derivative(const DiffForm& w);
/// df/f; UsageError on zero.
DiffForm dlog(const RationalFunction& f);
/// sum_k (-1)^{k-1} w_1 ^ .. ^ (w_k omitted) ^ .. ^ w_p for 1-forms, p >= 2.
DiffForm der_bracket(std::span<const DiffForm> forms);
/// Interior product with sum_i x_i d/dx_i.
DiffForm euler_contraction(const DiffForm& w);
/// Pulls back along x_i = phi_i(y); all phi_i share their variable count.
DiffForm pullback(const DiffForm& w, std::span<const RationalFunction> phi);

struct LogDependence {
    bool bracket_zero = false;
    bool wedge_zero = false;
    /// (g_1..g_p) != 0 with sum g_i = 0 and sum g_i dlog f_i = 0, when one exists.
    std::optional<std::vector<MultiPoly>> witness;
};

/// Decides the vanishing of the derivation bracket and of the wedge of the
/// dlog f_i by exact rank tests over K(x). UsageError on constant input.
LogDependence log_dependence(std::span<const RationalFunction> fs);

/// Inverse of DiffForm::to_string.
DiffForm parse_form(std::string_view text, int nvars, int degree, const FieldSpec* field);

} // namespace twistcert
