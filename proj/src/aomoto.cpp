#include "twistcert/aomoto.hpp"

#include "twistcert/errors.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <stdexcept>

namespace twistcert {

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void combinations(std::size_t k, std::size_t lo, std::size_t hi, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k + 1) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = lo; i <= hi; ++i) {
        cur.push_back(i);
        combinations(k, i + 1, hi, cur, out);
        cur.pop_back();
    }
}

bool sums_to_zero(std::span<const Scalar> w) {
    if (w.empty()) return true;
    Scalar total = Scalar::zero(w.front().field());
    for (const auto& x : w) total += x;
    return total.is_zero();
}

ScalarMatrix hstack(const ScalarMatrix& m, std::span<const OSElement> extra, std::size_t rows, const FieldSpec* f) {
    ScalarMatrix out(rows, m.cols() + extra.size(), f);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
        for (std::size_t j = 0; j < extra.size(); ++j) out(i, m.cols() + j) = extra[j].coords[i];
    }
    return out;
}

bool spans(const OSAlgebra& os, int k, std::span<const OSElement> family) {
    const ScalarMatrix m = hstack(ScalarMatrix(os.dim(k), 0, os.field()), family, os.dim(k), os.field());
    return family.size() == os.dim(k) && rank(m) == os.dim(k);
}

} // namespace

AomotoComplex::AomotoComplex(std::shared_ptr<const OSAlgebra> os, std::vector<Scalar> weights)
    : os_(std::move(os)), weights_(std::move(weights)) {
    a_ = os_->degree_one(weights_);
    if (!os_->wedge(a_, a_).is_zero()) throw std::logic_error("a ^ a does not vanish");
    const int top = os_->top_degree();
    std::vector<std::future<std::pair<ScalarMatrix, std::size_t>>> jobs;
    for (int k = 0; k <= top; ++k)
        jobs.push_back(std::async(std::launch::async, [this, k] {
            ScalarMatrix m = os_->left_multiplication(a_, k);
            const std::size_t r = rank(m);
            return std::make_pair(std::move(m), r);
        }));
    for (auto& j : jobs) {
        auto [m, r] = j.get();
        differentials_.push_back(std::move(m));
        ranks_.push_back(r);
    }
}

std::size_t AomotoComplex::differential_rank(int k) const {
    if (k < 0 || k >= static_cast<int>(ranks_.size())) return 0;
    return ranks_[k];
}

bool AomotoComplex::is_cocycle(const OSElement& x) const { return os_->wedge(a_, x).is_zero(); }

bool AomotoComplex::independent_in_cohomology(int k, std::span<const OSElement> family) const {
    for (const auto& x : family)
        if (x.degree != k || !is_cocycle(x)) return false;
    const std::size_t rows = os_->dim(k);
    const ScalarMatrix image = k > 0 ? differentials_.at(k - 1) : ScalarMatrix(rows, 0, os_->field());
    return rank(hstack(image, family, rows, os_->field())) == differential_rank(k - 1) + family.size();
}

AomotoCohomology aomoto_cohomology(const AomotoComplex& complex) {
    const OSAlgebra& os = complex.os();
    AomotoCohomology out;
    out.os_dims = os.dims();
    for (int k = 0; k <= os.top_degree(); ++k) out.differential_ranks.push_back(complex.differential_rank(k));
    for (int k = 0; k <= os.top_degree(); ++k) {
        out.ranks.push_back(out.os_dims[k] - complex.differential_rank(k) - complex.differential_rank(k - 1));
        const long long sign = k % 2 ? -1 : 1;
        out.os_euler += sign * static_cast<long long>(out.os_dims[k]);
        out.cohomology_euler += sign * static_cast<long long>(out.ranks.back());
    }
    const auto& w = complex.weights();
    const auto& order = os.order();
    const bool rational = std::all_of(w.begin(), w.end(), [](const Scalar& x) { return x.is_rational(); });
    const bool lemma = os.arrangement().is_central() && is_generic(os.arrangement()) && rational && !w.empty() &&
                       sums_to_zero(w) && !w[order.front()].is_integer() && !w[order.back()].is_integer();
    out.label = lemma ? "local system (generic lemma)" : "combinatorial (Aomoto)";
    return out;
}

AomotoCohomology aomoto_cohomology(std::shared_ptr<const OSAlgebra> os, std::vector<Scalar> weights) {
    return aomoto_cohomology(AomotoComplex(std::move(os), std::move(weights)));
}

std::vector<Scalar> shift_weight(std::span<const Scalar> lambda, std::span<const long> k) {
    if (lambda.size() != k.size()) throw UsageError("shift length must equal weight length");
    long total = 0;
    for (long x : k) total += x;
    if (total != 0) throw UsageError("integer shift must sum to zero");
    std::vector<Scalar> out(lambda.begin(), lambda.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += Scalar(k[i]).in_field(out[i].field());
    return out;
}

bool is_generic(const Arrangement& a) {
    const std::size_t n = a.size();
    const int l = a.ambient();
    if (static_cast<int>(n) <= l) return a.normal_rank(a.all()) == static_cast<int>(n);
    for (HyperplaneSet s = 0; s <= a.all(); ++s)
        if (std::popcount(s) == l && a.normal_rank(s) != l) return false;
    return true;
}

Arrangement random_generic_central(int s, int n, std::mt19937_64& rng, int max_attempts) {
    if (s < 1 || n < 1 || s > static_cast<int>(kMaxHyperplanes)) throw UsageError("bad size for a generic arrangement");
    std::uniform_int_distribution<long> coeff(-9, 9);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Hyperplane> hs;
        for (int i = 0; i < s; ++i) {
            Hyperplane h;
            for (int j = 0; j < n; ++j) h.normal.push_back(Scalar(coeff(rng)));
            h.offset = Scalar(0);
            hs.push_back(std::move(h));
        }
        try {
            Arrangement a(n, ArrangementKind::central, std::move(hs));
            if (is_generic(a)) return a;
        } catch (const UsageError&) {
        }
    }
    throw UsageError("no generic arrangement found within the attempt bound");
}

Arrangement random_general_position(int s, int l, std::mt19937_64& rng) {
    return decone(random_generic_central(s + 1, l + 1, rng), 0);
}

HopfSplitting hopf_splitting_check(const Arrangement& central, std::span<const Scalar> weights, std::size_t chosen) {
    if (!central.is_central()) throw UsageError("Hopf splitting needs a central arrangement");
    if (weights.size() != central.size()) throw UsageError("weight vector length must equal hyperplane count");
    if (!sums_to_zero(weights)) throw UsageError("Hopf splitting needs weights summing to zero");
    HopfSplitting out;
    out.chosen = chosen;
    out.central_ranks =
        aomoto_cohomology(std::make_shared<OSAlgebra>(central), std::vector<Scalar>(weights.begin(), weights.end()))
            .ranks;
    std::vector<Scalar> rest;
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (i != chosen) rest.push_back(weights[i]);
    out.decone_ranks = aomoto_cohomology(std::make_shared<OSAlgebra>(decone(central, chosen)), rest).ranks;
    out.holds = true;
    const std::size_t top = std::max(out.central_ranks.size(), out.decone_ranks.size() + 1);
    for (std::size_t k = 0; k < top; ++k) {
        const std::size_t c = k < out.central_ranks.size() ? out.central_ranks[k] : 0;
        const std::size_t d0 = k < out.decone_ranks.size() ? out.decone_ranks[k] : 0;
        const std::size_t d1 = k >= 1 && k - 1 < out.decone_ranks.size() ? out.decone_ranks[k - 1] : 0;
        if (c != d0 + d1) out.holds = false;
    }
    return out;
}

std::vector<std::vector<std::size_t>> families_with_first(std::size_t k, std::size_t last) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur{0};
    combinations(k, 1, last, cur, out);
    return out;
}

GenericLemmaVerdict generic_lemma_suite(int s, int n, std::span<const Scalar> weights, std::uint64_t seed) {
    if (n < 1 || s <= n) throw UsageError("generic lemma needs s > n >= 1");
    if (static_cast<int>(weights.size()) != s) throw UsageError("weight vector length must equal s");
    for (const auto& w : weights)
        if (!w.is_rational()) throw UsageError("generic lemma suite needs rational weights");
    if (!sums_to_zero(weights)) throw UsageError("weights must sum to zero");
    if (weights.front().is_integer() || weights.back().is_integer())
        throw UsageError("first and last weights must not be integers");

    GenericLemmaVerdict v;
    v.s = s;
    v.n = n;
    v.weights.assign(weights.begin(), weights.end());
    std::mt19937_64 rng(seed);
    v.arrangement = random_generic_central(s, n, rng);
    auto os = std::make_shared<OSAlgebra>(v.arrangement);
    const AomotoComplex complex(os, v.weights);
    v.ranks = aomoto_cohomology(complex).ranks;
    v.expected = binom(static_cast<std::size_t>(s - 2), static_cast<std::size_t>(n - 1));
    v.vanishing_outside = true;
    for (int k = 0; k < static_cast<int>(v.ranks.size()); ++k)
        if (k != n && k != n - 1 && v.ranks[k] != 0) v.vanishing_outside = false;
    v.dims_match = static_cast<int>(v.ranks.size()) == n + 1 && v.ranks[n] == v.expected && v.ranks[n - 1] == v.expected;

    const auto tuples = families_with_first(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(s - 2));
    std::vector<OSElement> top, der;
    for (const auto& t : tuples) {
        top.push_back(os->monomial(t));
        der.push_back(os->derivation(t));
    }
    v.top_family_basis = v.dims_match && top.size() == v.expected && complex.independent_in_cohomology(n, top);
    v.derivation_family_basis =
        v.dims_match && der.size() == v.expected && complex.independent_in_cohomology(n - 1, der);
    return v;
}

CorollaryVerdict untwisted_corollary_check(const Arrangement& affine) {
    if (affine.is_central()) throw UsageError("untwisted corollary check takes an affine arrangement");
    CorollaryVerdict v;
    v.affine = affine;
    v.coned = cone(affine);
    const std::size_t s = affine.size();
    const std::size_t l = static_cast<std::size_t>(affine.ambient());
    const OSAlgebra os_affine(affine);
    v.affine_dims = os_affine.dims();
    v.affine_dims_binomial = v.affine_dims.size() == std::min(s, l) + 1;
    for (std::size_t k = 0; k < v.affine_dims.size(); ++k)
        if (v.affine_dims[k] != binom(s, k)) v.affine_dims_binomial = false;

    const OSAlgebra os(v.coned);
    const std::size_t sc = s + 1;
    const std::size_t n = l + 1;
    v.coned_dims = os.dims();
    v.coned_dims_match = v.coned_dims.size() == n + 1;
    for (std::size_t k = 0; k < v.coned_dims.size() && v.coned_dims_match; ++k) {
        const std::size_t expect = k < n ? binom(sc, k) : binom(sc - 1, n - 1);
        if (v.coned_dims[k] != expect) v.coned_dims_match = false;
    }
    if (!v.coned_dims_match) return v;

    std::vector<OSElement> top;
    for (const auto& t : families_with_first(n - 1, sc - 1)) top.push_back(os.monomial(t));
    v.top_family_basis = spans(os, static_cast<int>(n), top);
    v.mixed_family_basis = true;
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<OSElement> fam;
        for (const auto& t : families_with_first(k, sc - 1)) fam.push_back(os.derivation(t));
        for (const auto& t : families_with_first(k - 1, sc - 1)) fam.push_back(os.monomial(t));
        if (!spans(os, static_cast<int>(k), fam)) v.mixed_family_basis = false;
    }
    return v;
}

} // namespace twistcert
