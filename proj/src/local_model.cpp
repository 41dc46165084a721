#include "twistcert/local_model.hpp"

#include "twistcert/errors.hpp"

namespace twistcert {

LocalModelVerdict restrict_and_certify(const DivisorSystem& sys) {
    LocalModelVerdict v;
    v.hypotheses = check_hypotheses(sys);
    if (!v.hypotheses.holds()) throw UsageError("local model needs (A1)-(A3) to hold at a base point");
    if (!sys.has_theorem_weight()) throw UsageError("local model needs sum of the first s weights zero and the rest zero");
    const std::size_t s = static_cast<std::size_t>(sys.s);
    const std::size_t n = static_cast<std::size_t>(sys.n);
    for (std::size_t i = 0; i < s; ++i)
        if (!sys.weights[i].is_rational()) throw UsageError("local model needs rational weights");
    v.weights.assign(sys.weights.begin(), sys.weights.begin() + static_cast<long>(s));
    if (v.weights.front().is_integer() || v.weights.back().is_integer())
        throw UsageError("after integer shifts the first and last weights must be non-integral; "
                         "reorder the members so that they are");

    // Shift integral middle weights to zero, compensating on the first.
    std::vector<long> shift(s, 0);
    for (std::size_t i = 1; i + 1 < s; ++i) {
        if (!v.weights[i].is_integer() || v.weights[i].is_zero()) continue;
        const long k = v.weights[i].as_rational()->get_num().get_si();
        shift[i] = -k;
        shift[0] += k;
    }
    v.normalized_weights = shift_weight(v.weights, shift);

    const ScalarMatrix& a = v.hypotheses.matrix_A;
    std::vector<Hyperplane> hs;
    std::vector<MultiPoly> alphas;
    for (std::size_t j = 0; j < s; ++j) {
        Hyperplane h;
        MultiPoly alpha(static_cast<int>(n), sys.field);
        for (std::size_t i = 0; i < n; ++i) {
            h.normal.push_back(a(i, j));
            alpha += MultiPoly::variable(static_cast<int>(n), static_cast<int>(i), sys.field) * a(i, j);
        }
        h.offset = Scalar::zero(sys.field);
        hs.push_back(std::move(h));
        alphas.push_back(std::move(alpha));
    }
    v.local = Arrangement(static_cast<int>(n), ArrangementKind::central, std::move(hs), sys.field);

    auto os = std::make_shared<OSAlgebra>(v.local);
    const AomotoComplex complex(os, v.normalized_weights);
    v.ranks = aomoto_cohomology(complex).ranks;

    std::vector<OSElement> fam;
    for (const auto& t : families_with_first(n - 1, s - 2)) {
        v.family.push_back(t);
        fam.push_back(os->derivation(t));
    }
    v.family_independent = complex.independent_in_cohomology(static_cast<int>(n) - 1, fam);
    if (sys.s < sys.m()) {
        std::vector<OSElement> top;
        for (const auto& t : families_with_first(n - 1, s - 2)) {
            v.top_family.push_back(t);
            top.push_back(os->monomial(t));
        }
        v.top_family_independent = complex.independent_in_cohomology(static_cast<int>(n), top);
    }

    const auto chart = chart_coordinates(sys, v.hypotheses);
    std::vector<DiffForm> e;
    for (const auto& alpha : alphas) e.push_back(dlog(RationalFunction(alpha)));
    DiffForm e_lambda(static_cast<int>(n), 1, sys.field);
    for (std::size_t j = 0; j < s; ++j) e_lambda += e[j] * sys.weights[j];
    v.omega_restricts = pullback(e_lambda, chart) == build_omega(sys).form;

    v.eta_restricts = true;
    for (const auto& t : v.family) {
        std::vector<DiffForm> local_forms, global_forms;
        for (std::size_t i : t) {
            local_forms.push_back(e[i]);
            global_forms.push_back(dlog(RationalFunction(sys.F[i])));
        }
        if (pullback(der_bracket(local_forms), chart) != der_bracket(global_forms)) v.eta_restricts = false;
    }
    return v;
}

std::optional<std::vector<std::size_t>> local_model_order(const DivisorSystem& sys) {
    sys.validate();
    std::vector<std::size_t> frac, rest;
    for (std::size_t i = 0; i < static_cast<std::size_t>(sys.s); ++i)
        (sys.weights[i].is_integer() ? rest : frac).push_back(i);
    if (frac.size() < 2) return std::nullopt;
    std::vector<std::size_t> order{frac.front()};
    for (std::size_t i = 0; i < static_cast<std::size_t>(sys.s); ++i)
        if (i != frac.front() && i != frac.back()) order.push_back(i);
    order.push_back(frac.back());
    return order;
}

DivisorSystem reordered(const DivisorSystem& sys, std::span<const std::size_t> order) {
    if (order.size() != static_cast<std::size_t>(sys.s)) throw UsageError("order must list the first s members");
    std::vector<bool> seen(order.size(), false);
    DivisorSystem out = sys;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i] >= order.size() || seen[order[i]]) throw UsageError("order is not a permutation");
        seen[order[i]] = true;
        out.F[i] = sys.F[order[i]];
        out.weights[i] = sys.weights[order[i]];
    }
    return out;
}

} // namespace twistcert
