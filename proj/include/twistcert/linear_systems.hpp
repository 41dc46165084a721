#pragma once

#include "twistcert/diff_form.hpp"
#include "twistcert/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace twistcert {

/// Divisors F_1..F_m of common degree d on P^n; the first s span the linear system.
struct DivisorSystem {
    int n = 0;
    int d = 0;
    int s = 0;
    std::vector<MultiPoly> F;
    std::vector<Scalar> weights;
    std::optional<std::vector<Scalar>> base_point;
    const FieldSpec* field = FieldSpec::rationals();

    int m() const { return static_cast<int>(F.size()); }
    /// UsageError unless 1 < n < s <= m, every F_i is nonzero and homogeneous
    /// of degree d in n+1 variables, and there is one weight per divisor.
    void validate() const;
    /// sum of the first s weights is zero and the rest vanish.
    bool has_theorem_weight() const;
};

struct A1Report {
    bool holds = false;
    int span_dim = 0;
    /// Chosen among the first s divisors, lexicographically first.
    std::vector<std::size_t> basis_indices;
    bool reindexed = false;
};

enum class A2Status { holds, failed, not_checked };
std::string to_string(A2Status s);

struct A2Report {
    A2Status status = A2Status::not_checked;
    std::vector<std::string> which_failed;
    int jacobian_rank = 0;
};

struct A3Report {
    bool holds = false;
    std::optional<std::vector<std::size_t>> vanishing_minor;
};

struct HypothesisReport {
    A1Report a1;
    A2Report a2;
    A3Report a3;
    /// n x s with F_j = sum_i A(i, j) F_{b_i}; empty unless a1 holds.
    ScalarMatrix matrix_A;
    bool holds() const { return a1.holds && a2.status == A2Status::holds && a3.holds; }
};

HypothesisReport check_hypotheses(const DivisorSystem& sys);

struct OmegaCertificate {
    DiffForm form;
    /// sum over i != j of lambda_i dlog(F_i/F_j) equals the form for these j.
    std::vector<std::size_t> checked_j;
    bool well_defined = false;
};

/// sum lambda_i dlog F_i; UsageError unless the weights sum to zero.
OmegaCertificate build_omega(const DivisorSystem& sys);

struct CocycleCertificate {
    std::vector<std::size_t> indices;
    DiffForm eta;
    bool d_closed = false;
    bool nabla_closed = false;
    bool nonzero = false;
    bool certified() const { return d_closed && nabla_closed && nonzero; }
};

struct CocycleFamily {
    int degree = 0;
    std::vector<CocycleCertificate> certificates;
    /// Positions in `certificates` of the distinguished independent family.
    std::vector<std::size_t> distinguished;
};

/// Degree n-1: eta[i1..in] for all n-subsets of the first s divisors.
/// Degree n (needs s < m): eta[m, i1..in]. Certificates are in lexicographic
/// order of index tuples; `jobs` bounds the worker threads.
CocycleFamily build_cocycles(const DivisorSystem& sys, int degree, const OmegaCertificate& omega, unsigned jobs = 1);
CocycleFamily build_cocycles(const DivisorSystem& sys, int degree, unsigned jobs = 1);

/// d[dlog F_i : ...] vanishes for every (n+1)-subset of the first s divisors.
bool brackets_vanish_above(const DivisorSystem& sys);

struct LowerBounds {
    bool trivial_weight = false;
    bool weight_user_asserted = false;
    std::optional<std::size_t> h_top_minus_1;
    std::optional<std::size_t> h_top;
    /// (k, bound on dim H^k(M)).
    std::vector<std::pair<int, std::size_t>> betti;
};

LowerBounds lower_bounds(const DivisorSystem& sys);

struct AffineProjectivization {
    DivisorSystem system;
    std::vector<int> degrees;
    bool infinity_in_support = false;
    Scalar infinity_weight;
    /// All degrees equal and the weights sum to zero.
    bool zero_infinity_weight_case = false;
};

/// F_j = x0^d f_j(x1/x0, .., xn/x0) with d the largest degree; the new
/// coordinate x0 comes first. The returned system has s = m and no base point.
AffineProjectivization projectivize_affine(std::span<const MultiPoly> f, std::span<const Scalar> weights);

/// x_k^d-chart coordinates y_i = F_{b_i} / x_k^d, with k the first nonzero coordinate of P.
std::vector<RationalFunction> chart_coordinates(const DivisorSystem& sys, const HypothesisReport& report);

} // namespace twistcert
