#pragma once

#include "twistcert/os_algebra.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace twistcert {

/// (OS, a ^ .) for a = sum lambda_H e_H.
class AomotoComplex {
public:
    /// Throws std::logic_error if a ^ a does not vanish.
    AomotoComplex(std::shared_ptr<const OSAlgebra> os, std::vector<Scalar> weights);

    const OSAlgebra& os() const { return *os_; }
    const std::vector<Scalar>& weights() const { return weights_; }
    const OSElement& a() const { return a_; }
    /// Matrix of a ^ . from degree k to k+1.
    const ScalarMatrix& differential(int k) const { return differentials_.at(k); }
    std::size_t differential_rank(int k) const;

    bool is_cocycle(const OSElement& x) const;
    /// The cocycles in `family` are linearly independent in H^k.
    bool independent_in_cohomology(int k, std::span<const OSElement> family) const;

private:
    std::shared_ptr<const OSAlgebra> os_;
    std::vector<Scalar> weights_;
    OSElement a_;
    std::vector<ScalarMatrix> differentials_;
    std::vector<std::size_t> ranks_;
};

struct AomotoCohomology {
    std::vector<std::size_t> os_dims;
    std::vector<std::size_t> differential_ranks;
    std::vector<std::size_t> ranks;
    long long os_euler = 0;
    long long cohomology_euler = 0;
    /// "local system (generic lemma)" when the generic lemma applies, else "combinatorial (Aomoto)".
    std::string label;
};

AomotoCohomology aomoto_cohomology(const AomotoComplex& complex);
AomotoCohomology aomoto_cohomology(std::shared_ptr<const OSAlgebra> os, std::vector<Scalar> weights);

/// lambda + k; UsageError unless sum k = 0.
std::vector<Scalar> shift_weight(std::span<const Scalar> lambda, std::span<const long> k);

/// Every n-subset of the hyperplanes has independent normals.
bool is_generic(const Arrangement& a);

/// Central generic arrangement of s hyperplanes in K^n with integer normals,
/// redrawn until every n x n minor is nonzero. UsageError after max_attempts.
Arrangement random_generic_central(int s, int n, std::mt19937_64& rng, int max_attempts = 1000);

struct HopfSplitting {
    std::size_t chosen = 0;
    std::vector<std::size_t> central_ranks;
    std::vector<std::size_t> decone_ranks;
    /// central H^k = decone H^k + decone H^{k-1} for every k.
    bool holds = false;
};

/// Compares Aomoto ranks of a central arrangement with those of its decone at
/// `chosen`; needs sum of weights zero.
HopfSplitting hopf_splitting_check(const Arrangement& central, std::span<const Scalar> weights, std::size_t chosen = 0);

struct GenericLemmaVerdict {
    int s = 0;
    int n = 0;
    std::vector<Scalar> weights;
    Arrangement arrangement;
    std::vector<std::size_t> ranks;
    std::size_t expected = 0;
    bool vanishing_outside = false;
    bool dims_match = false;
    /// e_1 ^ e_{i1} ^ ... ^ e_{i(n-1)}, 1 < i1 < ... < i(n-1) < s, spans H^n.
    bool top_family_basis = false;
    /// d[e_1 : e_{i1} : ... : e_{i(n-1)}] spans H^{n-1}.
    bool derivation_family_basis = false;
    int attempts = 0;
    bool passed() const { return vanishing_outside && dims_match && top_family_basis && derivation_family_basis; }
};

/// Generic-arrangement lemma on a random generic central arrangement.
/// UsageError unless weights are rational, sum to zero, and the first and last are not integers.
GenericLemmaVerdict generic_lemma_suite(int s, int n, std::span<const Scalar> weights, std::uint64_t seed);

/// Index tuples 1 < i1 < ... < i(k) <= last (0-based: hyperplane 0 first), each prefixed with 0.
std::vector<std::vector<std::size_t>> families_with_first(std::size_t k, std::size_t last);

struct CorollaryVerdict {
    Arrangement affine;
    Arrangement coned;
    std::vector<std::size_t> affine_dims;
    std::vector<std::size_t> coned_dims;
    bool affine_dims_binomial = false;
    bool coned_dims_match = false;
    /// Family (3) spans OS^n of the cone.
    bool top_family_basis = false;
    /// Family (4) spans OS^k of the cone for 1 <= k <= n-1.
    bool mixed_family_basis = false;
    bool passed() const { return affine_dims_binomial && coned_dims_match && top_family_basis && mixed_family_basis; }
};

/// Untwisted checks for an affine arrangement of s hyperplanes in general
/// position: OS dims C(s, k), and the basis families of its cone (hyperplane
/// at infinity first) in the untwisted cohomology of a generic arrangement.
CorollaryVerdict untwisted_corollary_check(const Arrangement& affine);

/// Affine arrangement of s hyperplanes in general position in K^l, drawn as the decone of a random generic one.
Arrangement random_general_position(int s, int l, std::mt19937_64& rng);

} // namespace twistcert
