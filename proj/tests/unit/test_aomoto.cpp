#include "support/os_oracle.hpp"
#include "twistcert/aomoto.hpp"
#include "twistcert/errors.hpp"
#include "twistcert/poly_io.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace twistcert;
using namespace twistcert::testing;

namespace {

const FieldSpec* Q = FieldSpec::rationals();

Arrangement from_text(std::initializer_list<const char*> forms, int nvars, ArrangementKind kind,
                      const FieldSpec* field = Q) {
    std::vector<MultiPoly> ps;
    for (const char* f : forms) ps.push_back(parse_poly(f, nvars, field));
    return Arrangement::from_linear_forms(ps, kind);
}

Arrangement b3() {
    return from_text({"x0", "x1", "x2", "x0-x1", "x0+x1", "x0-x2", "x0+x2", "x1-x2", "x1+x2"}, 3,
                     ArrangementKind::central);
}

Arrangement ceva() {
    return from_text({"x0-x1", "x0+x1", "x0-x2", "x0+x2", "x1-x2", "x1+x2"}, 3, ArrangementKind::projective);
}

Arrangement affine_with_parallels() {
    return from_text({"x0", "x0-1", "x1", "x1-1", "x0+x1-1", "x0-x1"}, 2, ArrangementKind::affine);
}

Arrangement hessian() {
    const FieldSpec* xi = FieldSpec::extension({1, 1, 1});
    return from_text({"x0", "x1", "x2", "x0+x1+x2", "x0+t*x1+t^2*x2", "x0+t^2*x1+t*x2", "x0+t*x1+x2",
                      "x0+t^2*x1+t^2*x2", "x0+x1+t*x2", "x0+t^2*x1+x2", "x0+x1+t^2*x2", "x0+t*x1+t*x2"},
                     3, ArrangementKind::projective, xi);
}

Scalar q(long n, long d = 1) { return Scalar(mpq_class(n, d)); }

std::vector<Scalar> random_weights(std::size_t n, std::mt19937_64& rng, bool zero_sum) {
    std::uniform_int_distribution<long> num(-40, 40), den(1, 13);
    std::vector<Scalar> w;
    Scalar total(0);
    for (std::size_t i = 0; i < n; ++i) {
        w.push_back(Scalar(mpq_class(num(rng), den(rng))));
        total += w.back();
    }
    if (zero_sum) w.back() -= total;
    return w;
}

long long binom(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void expect_matches_exterior_quotient(const Arrangement& a) {
    const OSAlgebra os(a);
    for (int k = 0; k <= os.top_degree() + 1; ++k) {
        const ExteriorQuotient quotient(a, k);
        EXPECT_EQ(os.dim(k), quotient.dimension()) << "degree " << k;
        if (k > os.top_degree()) continue;
        // Every monomial minus its nbc expansion lies in the ideal.
        for (HyperplaneSet s = 0; s < (HyperplaneSet{1} << a.size()); ++s) {
            if (std::popcount(s) != k) continue;
            std::vector<std::size_t> tuple;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (s >> i & 1u) tuple.push_back(i);
            const OSElement e = os.monomial(tuple);
            std::vector<std::pair<std::vector<std::size_t>, Scalar>> terms{{tuple, Scalar::one(a.field())}};
            for (std::size_t j = 0; j < e.coords.size(); ++j)
                if (!e.coords[j].is_zero()) terms.emplace_back(os.basis(k)[j], -e.coords[j]);
            EXPECT_TRUE(quotient.in_ideal(terms)) << "monomial " << s;
        }
    }
}

std::vector<std::size_t> whitney(const Arrangement& a) {
    std::vector<std::size_t> out;
    for (long long w : lattice(a).whitney_numbers()) out.push_back(static_cast<std::size_t>(w));
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

OSElement sum(const OSAlgebra& os, const OSElement& x, const OSElement& y, int sign = 1) {
    OSElement out = x;
    for (std::size_t i = 0; i < out.coords.size(); ++i)
        out.coords[i] += sign > 0 ? y.coords[i] : -y.coords[i];
    (void)os;
    return out;
}

OSElement e(const OSAlgebra& os, std::size_t i) {
    const std::size_t idx[1] = {i};
    return os.monomial(idx);
}

OSElement wedge_all(const OSAlgebra& os, const std::vector<OSElement>& xs) {
    OSElement out = os.basis_element(0, 0);
    for (const auto& x : xs) out = os.wedge(out, x);
    return out;
}

} // namespace

TEST(OSAlgebra, BooleanIsExterior) {
    for (int l = 2; l <= 4; ++l) {
        std::vector<Hyperplane> hs;
        for (int i = 0; i < l; ++i) {
            std::vector<Scalar> n(l, Scalar(0));
            n[i] = Scalar(1);
            hs.push_back({n, Scalar(0)});
        }
        const OSAlgebra os(Arrangement(l, ArrangementKind::central, hs));
        for (int k = 0; k <= l; ++k) EXPECT_EQ(os.dim(k), static_cast<std::size_t>(binom(l, k)));
    }
}

TEST(OSAlgebra, GenericCentralPlane) {
    std::mt19937_64 rng(7);
    for (int s = 3; s <= 7; ++s) {
        const OSAlgebra os(random_generic_central(s, 2, rng));
        EXPECT_EQ(os.dims(), (std::vector<std::size_t>{1, static_cast<std::size_t>(s), static_cast<std::size_t>(s - 1)}));
    }
}

TEST(OSAlgebra, DimsMatchWhitneyNumbers) {
    std::mt19937_64 rng(8);
    for (const Arrangement& a : {b3(), ceva(), affine_with_parallels(), random_general_position(5, 2, rng),
                                 cone(affine_with_parallels()), hessian()})
        EXPECT_EQ(OSAlgebra(a).dims(), whitney(a));
    EXPECT_EQ(OSAlgebra(hessian()).dims(), (std::vector<std::size_t>{1, 12, 39, 28}));
}

TEST(OSAlgebra, MatchesExteriorQuotient) {
    expect_matches_exterior_quotient(b3());
    expect_matches_exterior_quotient(ceva());
    expect_matches_exterior_quotient(affine_with_parallels());
}

TEST(OSAlgebra, RelationsHold) {
    EXPECT_TRUE(OSAlgebra(b3()).relations_hold());
    EXPECT_TRUE(OSAlgebra(ceva()).relations_hold());
    EXPECT_TRUE(OSAlgebra(affine_with_parallels()).relations_hold());
    EXPECT_TRUE(OSAlgebra(b3(), {8, 7, 6, 5, 4, 3, 2, 1, 0}).relations_hold());
}

TEST(OSAlgebra, OrderChangesBasisNotDims) {
    const OSAlgebra forward(b3());
    const OSAlgebra backward(b3(), {8, 7, 6, 5, 4, 3, 2, 1, 0});
    EXPECT_EQ(forward.dims(), backward.dims());
    EXPECT_NE(forward.basis(2), backward.basis(2));
    EXPECT_THROW(OSAlgebra(b3(), {0, 0, 1, 2, 3, 4, 5, 6, 7}), UsageError);
}

TEST(OSAlgebra, MonomialSigns) {
    const OSAlgebra os(b3());
    const std::size_t ab[2] = {0, 1}, ba[2] = {1, 0}, aa[2] = {0, 0};
    const OSElement x = os.monomial(ab), y = os.monomial(ba);
    for (std::size_t i = 0; i < x.coords.size(); ++i) EXPECT_EQ(x.coords[i], -y.coords[i]);
    EXPECT_TRUE(os.monomial(aa).is_zero());
    // x0, x1, x0-x1 are dependent, so their triple product vanishes.
    const std::size_t dep[3] = {0, 1, 3};
    EXPECT_TRUE(os.monomial(dep).is_zero());
    EXPECT_THROW(OSAlgebra(affine_with_parallels()).derivation(std::vector<std::size_t>{0, 2}), UsageError);
}

TEST(OSAlgebra, DerivationSatisfiesBracketIdentities) {
    const OSAlgebra os(b3());
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::size_t> pick(0, 8);
    for (int trial = 0; trial < 60; ++trial) {
        const int p = 2 + trial % 3;
        std::vector<std::size_t> idx;
        for (int i = 0; i < p; ++i) idx.push_back(pick(rng));
        std::vector<OSElement> w;
        for (std::size_t i : idx) w.push_back(e(os, i));
        const OSElement bracket = os.derivation(idx);

        // (1) transposition of the first two entries.
        std::vector<std::size_t> swapped = idx;
        std::swap(swapped[0], swapped[1]);
        EXPECT_EQ(os.derivation(swapped).coords, sum(os, os.zero(p - 1), bracket, -1).coords);
        // (2)
        for (int j = 2; j <= p - 2; ++j) {
            const std::vector<std::size_t> head(idx.begin(), idx.begin() + j), tail(idx.begin() + j, idx.end());
            const OSElement first = os.wedge(os.derivation(head), os.monomial(tail));
            OSElement second = os.wedge(os.monomial(head), os.derivation(tail));
            EXPECT_EQ(sum(os, first, second, j % 2 ? -1 : 1).coords, bracket.coords);
        }
        // (3)
        const std::vector<std::size_t> rest(idx.begin() + 1, idx.end());
        OSElement three = os.wedge(sum(os, w[0], w[1], -1), os.derivation(rest));
        EXPECT_EQ(sum(os, os.zero(p - 1), three, -1).coords, bracket.coords);
        // (4) and (5)
        std::vector<OSElement> diffs4, diffs5;
        for (int i = 0; i + 1 < p; ++i) diffs4.push_back(sum(os, w[i], w[i + 1], -1));
        for (int i = 1; i < p; ++i) diffs5.push_back(sum(os, w[i], w[0], -1));
        const OSElement four = wedge_all(os, diffs4);
        EXPECT_EQ((p % 2 ? four : sum(os, os.zero(p - 1), four, -1)).coords, bracket.coords);
        EXPECT_EQ(wedge_all(os, diffs5).coords, bracket.coords);
        // (6)
        EXPECT_EQ(os.wedge(w[0], bracket).coords, os.monomial(idx).coords);
    }
}

TEST(Aomoto, ZeroWeightGivesOSDims) {
    const auto os = std::make_shared<OSAlgebra>(b3());
    const AomotoCohomology h = aomoto_cohomology(os, std::vector<Scalar>(9, Scalar(0)));
    EXPECT_EQ(h.ranks, os->dims());
    EXPECT_EQ(h.label, "combinatorial (Aomoto)");
}

TEST(Aomoto, EulerCharacteristicAndSquareZero) {
    std::mt19937_64 rng(10);
    for (const Arrangement& a : {b3(), ceva(), affine_with_parallels()}) {
        const auto os = std::make_shared<OSAlgebra>(a);
        for (int trial = 0; trial < 20; ++trial) {
            const AomotoComplex complex(os, random_weights(a.size(), rng, trial % 2 == 0));
            EXPECT_TRUE(os->wedge(complex.a(), complex.a()).is_zero());
            const AomotoCohomology h = aomoto_cohomology(complex);
            EXPECT_EQ(h.cohomology_euler, h.os_euler);
        }
    }
}

TEST(Aomoto, NonResonantCentralConcentratesOnBeta) {
    std::mt19937_64 rng(11);
    const auto os = std::make_shared<OSAlgebra>(b3());
    const long long beta = beta_invariant(b3());
    for (int trial = 0; trial < 5; ++trial) {
        const AomotoCohomology h = aomoto_cohomology(os, random_weights(9, rng, true));
        EXPECT_EQ(h.ranks, (std::vector<std::size_t>{0, 0, static_cast<std::size_t>(beta), static_cast<std::size_t>(beta)}));
    }
    const AomotoCohomology off = aomoto_cohomology(os, random_weights(9, rng, false));
    EXPECT_EQ(off.ranks, (std::vector<std::size_t>{0, 0, 0, 0}));
}

TEST(Aomoto, HopfSplitting) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 4; ++trial) {
        const auto w = random_weights(9, rng, true);
        EXPECT_TRUE(hopf_splitting_check(b3(), w, trial).holds);
    }
    std::vector<Scalar> resonant(6, Scalar(0));
    resonant[0] = q(1, 2);
    resonant[1] = q(-1, 2);
    EXPECT_TRUE(hopf_splitting_check(ceva(), resonant, 2).holds);
    EXPECT_THROW(hopf_splitting_check(b3(), std::vector<Scalar>(9, Scalar(1))), UsageError);
}

TEST(Aomoto, SpecGenericPlaneExample) {
    std::mt19937_64 rng(13);
    const Arrangement a = random_generic_central(5, 2, rng);
    const AomotoCohomology h =
        aomoto_cohomology(std::make_shared<OSAlgebra>(a), {q(1, 3), q(1, 5), q(-1, 3), q(-1, 5), q(0)});
    EXPECT_EQ(h.ranks, (std::vector<std::size_t>{0, 3, 3}));
    // The last weight is 0, so the lemma's hypothesis on the end weights fails.
    EXPECT_EQ(h.label, "combinatorial (Aomoto)");
    const AomotoCohomology g =
        aomoto_cohomology(std::make_shared<OSAlgebra>(a), {q(1, 3), q(1, 5), q(-1, 3), q(1, 5), q(-2, 5)});
    EXPECT_EQ(g.ranks, (std::vector<std::size_t>{0, 3, 3}));
    EXPECT_EQ(g.label, "local system (generic lemma)");
}

TEST(GenericArrangement, Examples) {
    const GenericLemmaVerdict v = generic_lemma_suite(4, 2, std::vector<Scalar>{q(1, 2), q(1, 3), q(-1, 3), q(-1, 2)}, 1);
    EXPECT_EQ(v.ranks, (std::vector<std::size_t>{0, 2, 2}));
    EXPECT_TRUE(v.passed());
    const GenericLemmaVerdict w =
        generic_lemma_suite(5, 3, std::vector<Scalar>{q(1, 2), q(1, 3), q(1, 5), q(-8, 15), q(-1, 2)}, 2);
    EXPECT_EQ(w.ranks, (std::vector<std::size_t>{0, 0, 3, 3}));
    EXPECT_TRUE(w.passed());
    EXPECT_THROW(generic_lemma_suite(4, 2, std::vector<Scalar>{q(1), q(1, 3), q(-1, 3), q(-1)}, 1), UsageError);
    EXPECT_THROW(generic_lemma_suite(4, 2, std::vector<Scalar>{q(1, 2), q(1, 3), q(-1, 3), q(1, 2)}, 1), UsageError);
}

TEST(GenericArrangement, StableAcrossDraws) {
    std::mt19937_64 rng(14);
    for (auto [s, n] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {4, 3}, {5, 3}}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            std::vector<Scalar> w;
            do {
                w = random_weights(static_cast<std::size_t>(s), rng, true);
            } while (w.front().is_integer() || w.back().is_integer());
            const GenericLemmaVerdict v = generic_lemma_suite(s, n, w, seed);
            EXPECT_TRUE(v.passed()) << s << " " << n << " seed " << seed;
            EXPECT_EQ(v.expected, static_cast<std::size_t>(binom(s - 2, n - 1)));
        }
    }
}

TEST(UntwistedBound, GeneralPositionLines) {
    std::mt19937_64 rng(15);
    for (int s = 4; s <= 6; ++s) {
        const CorollaryVerdict v = untwisted_corollary_check(random_general_position(s, 2, rng));
        EXPECT_TRUE(v.passed()) << s;
        EXPECT_EQ(v.affine_dims,
                  (std::vector<std::size_t>{1, static_cast<std::size_t>(s), static_cast<std::size_t>(binom(s, 2))}));
    }
}

TEST(ShiftWeight, Examples) {
    const std::vector<Scalar> l{q(3, 2), q(-1, 2), q(-1)};
    EXPECT_EQ(shift_weight(l, std::vector<long>{0, 0, 0}), l);
    EXPECT_EQ(shift_weight(l, std::vector<long>{-1, 0, 1}), (std::vector<Scalar>{q(1, 2), q(-1, 2), q(0)}));
    EXPECT_THROW(shift_weight(l, std::vector<long>{1, 0, 0}), UsageError);
}

TEST(Hessian, FirstCohomologyIsTwo) {
    const auto start = std::chrono::steady_clock::now();
    const Arrangement a = hessian();
    const auto os = std::make_shared<OSAlgebra>(a);
    const Scalar l1 = q(1, 3), l2 = q(2, 7), l3 = q(-5, 11);
    const Scalar l4 = -(l1 + l2 + l3);
    std::vector<Scalar> w;
    for (const Scalar& l : {l1, l2, l3, l4})
        for (int i = 0; i < 3; ++i) w.push_back(l);
    const AomotoCohomology h = aomoto_cohomology(os, w);
    EXPECT_EQ(h.ranks[1], 2u);
    EXPECT_EQ(h.cohomology_euler, h.os_euler);
    EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::minutes(5));
}
