#include "twistcert/linear_systems.hpp"

#include "twistcert/errors.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <thread>

namespace twistcert {

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    if (k > n) return out;
    for (;;) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

std::string name(std::size_t i) { return "F" + std::to_string(i + 1); }

Scalar weight_sum(std::span<const Scalar> w, std::size_t count) {
    Scalar total(0);
    for (std::size_t i = 0; i < count && i < w.size(); ++i) total += w[i];
    return total;
}

} // namespace

void DivisorSystem::validate() const {
    if (n < 2) throw UsageError("divisor system needs n > 1");
    if (s <= n) throw UsageError("divisor system needs s > n");
    if (s > m()) throw UsageError("divisor system needs s <= m");
    if (n + 1 > kMaxVars) throw UsageError("too many variables");
    if (static_cast<int>(weights.size()) != m()) throw UsageError("one weight per divisor required");
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (F[i].nvars() != n + 1) throw UsageError(name(i) + " must be a polynomial in n+1 variables");
        if (F[i].is_zero()) throw UsageError(name(i) + " is zero");
        const auto deg = F[i].homogeneous_degree();
        if (!deg) throw UsageError(name(i) + " is not homogeneous");
        if (*deg != d) throw UsageError(name(i) + " does not have degree d");
    }
    if (base_point && static_cast<int>(base_point->size()) != n + 1)
        throw UsageError("base point needs n+1 coordinates");
}

bool DivisorSystem::has_theorem_weight() const {
    if (!weight_sum(weights, static_cast<std::size_t>(s)).is_zero()) return false;
    for (std::size_t i = static_cast<std::size_t>(s); i < weights.size(); ++i)
        if (!weights[i].is_zero()) return false;
    return true;
}

std::string to_string(A2Status s) {
    switch (s) {
    case A2Status::holds:
        return "holds";
    case A2Status::failed:
        return "failed";
    case A2Status::not_checked:
        return "not checked";
    }
    return "";
}

HypothesisReport check_hypotheses(const DivisorSystem& sys) {
    sys.validate();
    HypothesisReport r;
    const std::size_t s = static_cast<std::size_t>(sys.s);
    const std::size_t n = static_cast<std::size_t>(sys.n);

    std::map<Exponent, std::size_t> rows;
    for (std::size_t j = 0; j < s; ++j)
        for (const auto& [e, c] : sys.F[j].terms()) rows.emplace(e, rows.size());
    ScalarMatrix coeffs(rows.size(), s, sys.field);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < s; ++j) coeffs(i, j) = Scalar::zero(sys.field);
    for (std::size_t j = 0; j < s; ++j)
        for (const auto& [e, c] : sys.F[j].terms()) coeffs(rows.at(e), j) = c;
    const ScalarRankKernelDet rk = rank_kernel_det(coeffs);
    r.a1.span_dim = static_cast<int>(rk.rank);
    r.a1.holds = rk.rank == n;
    r.a1.basis_indices = rk.pivot_columns;
    for (std::size_t i = 0; i < r.a1.basis_indices.size(); ++i)
        if (r.a1.basis_indices[i] != i) r.a1.reindexed = true;

    if (r.a1.holds) {
        const ScalarMatrix basis = coeffs.select_columns(r.a1.basis_indices);
        r.matrix_A = ScalarMatrix(n, s, sys.field);
        for (std::size_t j = 0; j < s; ++j) {
            const auto x = solve(basis, coeffs.column(j));
            if (!x) throw std::logic_error("divisor outside the span of the chosen basis");
            for (std::size_t i = 0; i < n; ++i) r.matrix_A(i, j) = (*x)[i];
        }
        r.a3.holds = true;
        for (const auto& cols : combinations(s, n)) {
            if (determinant(r.matrix_A.select_columns(cols)).is_zero()) {
                r.a3.holds = false;
                r.a3.vanishing_minor = cols;
                break;
            }
        }
    }

    if (sys.base_point) {
        const auto& p = *sys.base_point;
        if (std::all_of(p.begin(), p.end(), [](const Scalar& x) { return x.is_zero(); }))
            throw UsageError("base point must not be zero");
        r.a2.status = A2Status::holds;
        std::vector<std::size_t> members = r.a1.basis_indices;
        if (!r.a1.holds) {
            r.a2.which_failed.push_back("(A1) fails, so the basis is undetermined");
            members.resize(std::min(members.size(), n));
        }
        ScalarMatrix jac(members.size(), n + 1, sys.field);
        for (std::size_t k = 0; k < members.size(); ++k) {
            const MultiPoly& f = sys.F[members[k]];
            if (!f.evaluate(p).is_zero()) r.a2.which_failed.push_back(name(members[k]) + "(P) != 0");
            for (std::size_t v = 0; v <= n; ++v) jac(k, v) = f.derivative(static_cast<int>(v)).evaluate(p);
        }
        r.a2.jacobian_rank = static_cast<int>(rank(jac));
        if (r.a2.jacobian_rank != sys.n)
            r.a2.which_failed.push_back("jacobian rank " + std::to_string(r.a2.jacobian_rank) + " < " +
                                        std::to_string(sys.n));
        for (std::size_t i = s; i < sys.F.size(); ++i)
            if (sys.F[i].evaluate(p).is_zero()) r.a2.which_failed.push_back(name(i) + "(P) = 0");
        if (!r.a2.which_failed.empty()) r.a2.status = A2Status::failed;
    }
    return r;
}

OmegaCertificate build_omega(const DivisorSystem& sys) {
    sys.validate();
    if (!weight_sum(sys.weights, sys.weights.size()).is_zero()) throw UsageError("weights must sum to zero");
    const int vars = sys.n + 1;
    OmegaCertificate out;
    out.form = DiffForm(vars, 1, sys.field);
    for (std::size_t i = 0; i < sys.F.size(); ++i)
        if (!sys.weights[i].is_zero()) out.form += dlog(RationalFunction(sys.F[i])) * sys.weights[i];
    out.well_defined = true;
    for (std::size_t j : {std::size_t{0}, std::size_t{1}}) {
        DiffForm alt(vars, 1, sys.field);
        for (std::size_t i = 0; i < sys.F.size(); ++i)
            if (i != j && !sys.weights[i].is_zero())
                alt += dlog(RationalFunction(sys.F[i], sys.F[j])) * sys.weights[i];
        out.checked_j.push_back(j);
        if (alt != out.form) out.well_defined = false;
    }
    return out;
}

CocycleFamily build_cocycles(const DivisorSystem& sys, int degree, const OmegaCertificate& omega, unsigned jobs) {
    sys.validate();
    const std::size_t s = static_cast<std::size_t>(sys.s);
    const std::size_t n = static_cast<std::size_t>(sys.n);
    CocycleFamily fam;
    fam.degree = degree;
    std::vector<std::vector<std::size_t>> tuples;
    if (degree == sys.n - 1) {
        tuples = combinations(s, n);
        for (std::size_t t = 0; t < tuples.size(); ++t)
            if (tuples[t][0] == 0 && tuples[t].back() + 1 < s) fam.distinguished.push_back(t);
    } else if (degree == sys.n) {
        if (sys.s == sys.m()) throw UsageError("degree-n cocycles need s < m");
        const std::size_t last = static_cast<std::size_t>(sys.m() - 1);
        for (auto t : combinations(s, n)) {
            t.insert(t.begin(), last);
            tuples.push_back(std::move(t));
        }
        for (std::size_t t = 0; t < tuples.size(); ++t)
            if (tuples[t][1] == 0 && tuples[t].back() + 1 < s) fam.distinguished.push_back(t);
    } else {
        throw UsageError("cocycle degree must be n-1 or n");
    }

    std::vector<DiffForm> dl;
    for (const auto& f : sys.F) dl.push_back(dlog(RationalFunction(f)));
    fam.certificates.resize(tuples.size());
    auto work = [&](std::size_t t) {
        std::vector<DiffForm> forms;
        for (std::size_t i : tuples[t]) forms.push_back(dl[i]);
        CocycleCertificate c;
        c.indices = tuples[t];
        c.eta = der_bracket(forms);
        c.d_closed = exterior_derivative(c.eta).is_zero();
        c.nabla_closed = wedge(omega.form, c.eta).is_zero();
        c.nonzero = !c.eta.is_zero() && !wedge(forms).is_zero();
        fam.certificates[t] = std::move(c);
    };
    const unsigned width = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tuples.size())));
    if (width == 1) {
        for (std::size_t t = 0; t < tuples.size(); ++t) work(t);
    } else {
        std::vector<std::future<void>> futures;
        for (unsigned w = 0; w < width; ++w)
            futures.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t t = w; t < tuples.size(); t += width) work(t);
            }));
        for (auto& f : futures) f.get();
    }
    return fam;
}

CocycleFamily build_cocycles(const DivisorSystem& sys, int degree, unsigned jobs) {
    return build_cocycles(sys, degree, build_omega(sys), jobs);
}

bool brackets_vanish_above(const DivisorSystem& sys) {
    sys.validate();
    std::vector<DiffForm> dl;
    for (int i = 0; i < sys.s; ++i) dl.push_back(dlog(RationalFunction(sys.F[i])));
    for (const auto& t : combinations(static_cast<std::size_t>(sys.s), static_cast<std::size_t>(sys.n + 1))) {
        std::vector<DiffForm> forms;
        for (std::size_t i : t) forms.push_back(dl[i]);
        if (!der_bracket(forms).is_zero()) return false;
    }
    return true;
}

LowerBounds lower_bounds(const DivisorSystem& sys) {
    sys.validate();
    LowerBounds b;
    const std::size_t s = static_cast<std::size_t>(sys.s);
    const std::size_t n = static_cast<std::size_t>(sys.n);
    const bool extra = sys.s < sys.m();
    b.weight_user_asserted =
        std::any_of(sys.weights.begin(), sys.weights.end(), [](const Scalar& w) { return !w.is_rational(); });
    b.trivial_weight = !b.weight_user_asserted &&
                       std::all_of(sys.weights.begin(), sys.weights.end(), [](const Scalar& w) { return w.is_integer(); });
    if (!b.trivial_weight) {
        b.h_top_minus_1 = binom(s - 2, n - 1);
        if (extra) b.h_top = binom(s - 2, n - 1);
    }
    for (std::size_t k = 1; k < n; ++k) b.betti.emplace_back(static_cast<int>(k), extra ? binom(s, k) : binom(s - 1, k));
    if (extra) b.betti.emplace_back(static_cast<int>(n), binom(s - 1, n - 1));
    return b;
}

AffineProjectivization projectivize_affine(std::span<const MultiPoly> f, std::span<const Scalar> weights) {
    if (f.empty()) throw UsageError("no affine polynomials given");
    if (weights.size() != f.size()) throw UsageError("one weight per polynomial required");
    const int n = f.front().nvars();
    if (n + 1 > kMaxVars) throw UsageError("too many variables");
    AffineProjectivization out;
    int d = 0;
    for (const auto& p : f) {
        if (p.nvars() != n) throw UsageError("affine polynomials must share their variables");
        if (p.is_zero()) throw UsageError("affine polynomial is zero");
        out.degrees.push_back(p.total_degree());
        d = std::max(d, out.degrees.back());
    }
    const FieldSpec* field = f.front().field();
    for (const auto& p : f) {
        MultiPoly h(n + 1, p.field());
        for (const auto& [e, c] : p.terms()) {
            Exponent g{};
            g[0] = static_cast<std::uint16_t>(d - total_degree(e));
            for (int i = 0; i < n; ++i) g[i + 1] = e[i];
            h.add_term(g, c);
        }
        out.system.F.push_back(std::move(h));
    }
    out.system.n = n;
    out.system.d = d;
    out.system.s = static_cast<int>(f.size());
    out.system.weights.assign(weights.begin(), weights.end());
    out.system.field = field;
    out.infinity_in_support = std::any_of(out.degrees.begin(), out.degrees.end(), [&](int x) { return x < d; });
    out.infinity_weight = Scalar(0);
    for (std::size_t j = 0; j < f.size(); ++j) out.infinity_weight -= weights[j] * Scalar(out.degrees[j]);
    out.zero_infinity_weight_case = !out.infinity_in_support && weight_sum(weights, weights.size()).is_zero();
    return out;
}

std::vector<RationalFunction> chart_coordinates(const DivisorSystem& sys, const HypothesisReport& report) {
    if (!sys.base_point) throw UsageError("chart coordinates need a base point");
    if (!report.a1.holds) throw UsageError("chart coordinates need (A1)");
    const auto& p = *sys.base_point;
    const auto k = static_cast<int>(std::find_if(p.begin(), p.end(), [](const Scalar& x) { return !x.is_zero(); }) -
                                    p.begin());
    const MultiPoly denom = MultiPoly::variable(sys.n + 1, k, sys.field).pow(static_cast<unsigned>(sys.d));
    std::vector<RationalFunction> out;
    for (std::size_t b : report.a1.basis_indices) out.emplace_back(sys.F[b], denom);
    return out;
}

} // namespace twistcert
