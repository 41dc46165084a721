#include "twistcert/cli.hpp"

#include "twistcert/aomoto.hpp"
#include "twistcert/errors.hpp"
#include "twistcert/local_model.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace twistcert::cli {

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Json one_based(std::span<const std::size_t> xs) {
    Json out = Json::array();
    for (std::size_t x : xs) out.push_back(x + 1);
    return out;
}

Json members_json(HyperplaneSet m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < kMaxHyperplanes; ++i)
        if (m >> i & 1U) out.push_back(i + 1);
    return out;
}

Json scalars_json(std::span<const Scalar> xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(x.to_string());
    return out;
}

enum class Status { pass, fail, skipped };

struct Context {
    explicit Context(const RunOptions& o) : options(o) {}

    const RunOptions& options;
    Json checks = Json::array();
    Json values = Json::object();
    std::vector<std::string> lines;

    void check(const std::string& name, Status status, const std::string& detail = "") {
        static const char* names[] = {"pass", "fail", "skipped"};
        Json c{{"name", name}, {"status", names[static_cast<int>(status)]}};
        if (!detail.empty()) c["detail"] = detail;
        checks.push_back(std::move(c));
        lines.push_back(std::string("  [") + names[static_cast<int>(status)] + "] " + name +
                        (detail.empty() ? "" : ": " + detail));
    }
    void check(const std::string& name, bool ok, const std::string& detail = "") {
        check(name, ok ? Status::pass : Status::fail, detail);
    }
    void note(const std::string& line) { lines.push_back("  " + line); }
    void note(const std::string& prefix, const std::string& line) {
        note(prefix.empty() ? line : prefix.substr(0, prefix.size() - 1) + " " + line);
    }
};

std::string join(const std::vector<std::size_t>& xs, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + std::to_string(xs[i]);
    return out;
}

std::uint64_t mix_seed(std::uint64_t seed, const std::string& id) {
    return seed ^ std::stoull(digest(id), nullptr, 16);
}

/// Non-integral rationals k/q with small q and sum zero.
std::vector<Scalar> seeded_weights(std::size_t s, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const long denominators[] = {5, 7, 11, 13};
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<long> num(-9, 9);
    for (;;) {
        std::vector<Scalar> w;
        Scalar total(0);
        for (std::size_t i = 0; i + 1 < s; ++i) {
            w.emplace_back(mpq_class(num(rng), denominators[pick(rng)]));
            total += w.back();
        }
        w.push_back(-total);
        if (std::any_of(w.begin(), w.end(), [](const Scalar& x) { return x.is_integer(); })) continue;
        w.resize(m, Scalar(0));
        return w;
    }
}

/// Lattice, beta, chambers, genericity and dense edges of an arrangement.
Json analyze_arrangement(const Arrangement& a, const std::optional<std::vector<Scalar>>& weights, Context& ctx,
                         const std::string& prefix) {
    Json out;
    out["size"] = a.size();
    out["ambient"] = a.ambient();
    out["kind"] = to_string(a.kind());
    out["rank"] = a.rank();
    Json hs = Json::array();
    for (std::size_t i = 0; i < a.size(); ++i) hs.push_back(a.linear_form(i).to_string());
    out["hyperplanes"] = std::move(hs);

    const IntersectionLattice l = lattice(a);
    Json flats = Json::array();
    for (std::size_t i = 0; i < l.flats.size(); ++i)
        flats.push_back(Json{{"members", members_json(l.flats[i].members)},
                             {"rank", l.flats[i].rank},
                             {"dim", l.flats[i].dim},
                             {"mobius", l.mobius[i]}});
    out["lattice"] = std::move(flats);
    out["rank_counts"] = l.rank_counts();
    out["whitney_numbers"] = l.whitney_numbers();
    const std::string chi = twistcert::to_string(characteristic_polynomial(l, a.ambient()));
    out["characteristic_polynomial"] = chi;
    const long long beta = beta_invariant(a);
    out["beta"] = beta;
    ctx.values[prefix + "size"] = a.size();
    ctx.values[prefix + "rank_counts"] = l.rank_counts();
    ctx.values[prefix + "characteristic_polynomial"] = chi;
    ctx.values[prefix + "beta"] = beta;

    const bool essential = a.rank() == a.ambient();
    if (a.field()->is_rationals()) {
        const ChamberCounts c = chamber_counts(a);
        out["chambers"] = Json{{"regions", c.regions}, {"bounded", c.bounded}};
        ctx.values[prefix + "regions"] = c.regions;
        ctx.values[prefix + "bounded"] = c.bounded;
        if (a.is_central() && essential && a.ambient() >= 2) {
            std::vector<long long> bounded;
            bool all = true;
            for (std::size_t j = 0; j < a.size(); ++j) {
                bounded.push_back(chamber_counts(decone(a, j)).bounded);
                all = all && bounded.back() == beta;
            }
            out["decone_bounded_chambers"] = bounded;
            ctx.check(prefix + "beta_equals_bounded_chambers", all,
                      "beta " + std::to_string(beta) + " against every decone");
        }
    }
    if (a.is_central()) {
        const bool generic = is_generic(a);
        out["general_position"] = generic;
        if (generic && a.rank() >= 1) {
            const std::size_t expected = binom(a.size() - 2, static_cast<std::size_t>(a.rank() - 1));
            ctx.check(prefix + "beta_general_position", beta == static_cast<long long>(expected),
                      "beta " + std::to_string(beta) + ", C(s-2, r-1) = " + std::to_string(expected));
        }
        const Decomposition dec = is_decomposable(a);
        out["decomposable"] = dec.decomposable;
        Json comps = Json::array();
        for (HyperplaneSet c : dec.components) comps.push_back(members_json(c));
        out["matroid_components"] = std::move(comps);
    }
    if (weights) {
        if (weights->size() != a.size()) throw UsageError("one weight per hyperplane required");
        const DenseEdgeReport r = dense_edges(WeightedArrangement{a, *weights});
        Json edges = Json::array();
        for (const auto& e : r.edges)
            edges.push_back(Json{{"members", members_json(e.members)},
                                 {"dim", e.dim},
                                 {"lambda", e.lambda.to_string()},
                                 {"integrality", to_string(e.integrality)},
                                 {"center", e.is_center}});
        out["dense_edges"] = Json{{"edges", std::move(edges)},
                                  {"dense_edge_check", r.dense_edge_check},
                                  {"dense_edge_check_with_center", r.dense_edge_check_with_center},
                                  {"user_asserted", r.user_asserted}};
        ctx.values[prefix + "dense_edge_count"] = r.edges.size();
        ctx.values[prefix + "dense_edge_check"] = r.dense_edge_check;
        ctx.note(prefix, "dense edges: " + std::to_string(r.edges.size()) +
                 ", no nonnegative integral lambda off the center: " + (r.dense_edge_check ? "yes" : "no"));
    }
    ctx.note(prefix, "arrangement: " + std::to_string(a.size()) + " hyperplanes, chi = " + chi +
             ", beta = " + std::to_string(beta));
    return out;
}

Json analyze_aomoto(const Arrangement& a, const std::optional<std::vector<Scalar>>& weights,
                    const std::vector<std::size_t>& order, Context& ctx, const std::string& prefix) {
    auto os = std::make_shared<const OSAlgebra>(a, order);
    Json out;
    out["os_dims"] = os->dims();
    ctx.values[prefix + "os_dims"] = os->dims();
    std::vector<std::size_t> whitney;
    for (long long w : lattice(a).whitney_numbers()) whitney.push_back(static_cast<std::size_t>(w));
    ctx.check(prefix + "os_dims_match_whitney_numbers", os->dims() == whitney, "(" + join(os->dims()) + ")");
    Json basis = Json::array();
    for (int k = 0; k <= os->top_degree(); ++k) {
        Json deg = Json::array();
        for (const auto& t : os->basis(k)) deg.push_back(one_based(t));
        basis.push_back(std::move(deg));
    }
    out["nbc_basis"] = std::move(basis);
    if (!weights) return out;
    if (weights->size() != a.size()) throw UsageError("one weight per hyperplane required");
    const AomotoCohomology h = aomoto_cohomology(os, *weights);
    out["weights"] = scalars_json(*weights);
    out["differential_ranks"] = h.differential_ranks;
    out["ranks"] = h.ranks;
    out["os_euler"] = h.os_euler;
    out["cohomology_euler"] = h.cohomology_euler;
    out["label"] = h.label;
    ctx.values[prefix + "aomoto_ranks"] = h.ranks;
    if (h.ranks.size() > 1) ctx.values[prefix + "aomoto_h1"] = h.ranks[1];
    ctx.values[prefix + "aomoto_label"] = h.label;
    ctx.check(prefix + "aomoto_euler_characteristic", h.os_euler == h.cohomology_euler,
              "ranks (" + join(h.ranks) + "), " + h.label);
    return out;
}

/// Verifies F_i = c * prod factor^mult and builds the support arrangement with the induced weights.
std::pair<Arrangement, std::vector<Scalar>> support_arrangement(const DivisorSystem& sys,
                                                                const std::vector<std::vector<LineFactor>>& factors,
                                                                Context& ctx, Json& out) {
    if (factors.size() != sys.F.size()) throw UsageError("factors must be given for every divisor");
    std::vector<MultiPoly> lines;
    std::vector<Scalar> weights;
    Json per = Json::array();
    bool all = true;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        MultiPoly prod = MultiPoly::constant(sys.n + 1, Scalar::one(sys.field), sys.field);
        for (const auto& f : factors[i]) {
            prod *= f.form.pow(static_cast<unsigned>(f.multiplicity));
            lines.push_back(f.form);
            weights.push_back(sys.weights[i] * Scalar(f.multiplicity));
        }
        bool ok = !prod.is_zero() && !sys.F[i].is_zero() && prod.leading_exponent() == sys.F[i].leading_exponent();
        if (ok) ok = prod * (sys.F[i].leading_coefficient() / prod.leading_coefficient()) == sys.F[i];
        all = all && ok;
        per.push_back(ok);
    }
    out["factorization_verified"] = per;
    ctx.check("factorization", all, std::to_string(lines.size()) + " linear factors");
    return {Arrangement::from_linear_forms(lines, ArrangementKind::projective), weights};
}

Json cocycle_json(const CocycleFamily& fam, bool emit_forms) {
    Json certs = Json::array();
    for (std::size_t i = 0; i < fam.certificates.size(); ++i) {
        const auto& c = fam.certificates[i];
        Json j{{"indices", one_based(c.indices)},
               {"d_closed", c.d_closed},
               {"nabla_closed", c.nabla_closed},
               {"nonzero", c.nonzero},
               {"distinguished", std::find(fam.distinguished.begin(), fam.distinguished.end(), i) !=
                                     fam.distinguished.end()}};
        if (emit_forms) j["eta"] = c.eta.to_string();
        certs.push_back(std::move(j));
    }
    return Json{{"degree", fam.degree}, {"certificates", std::move(certs)}};
}

bool all_certified(const CocycleFamily& fam) {
    return std::all_of(fam.certificates.begin(), fam.certificates.end(),
                       [](const CocycleCertificate& c) { return c.certified(); });
}

/// Hypotheses, cocycles, bounds, local model, and the support arrangement when factors are given.
Json divisor_pipeline(const DivisorSystem& sys, const std::optional<std::vector<std::vector<LineFactor>>>& factors,
                      Context& ctx) {
    sys.validate();
    Json out;
    const std::size_t s = static_cast<std::size_t>(sys.s);
    const std::size_t n = static_cast<std::size_t>(sys.n);

    MultiPoly sum(sys.n + 1, sys.field);
    for (std::size_t i = 0; i < s; ++i) sum += sys.F[i];
    ctx.values["divisor_sum_is_zero"] = sum.is_zero();

    const HypothesisReport hyp = check_hypotheses(sys);
    Json h;
    h["A1"] = Json{{"holds", hyp.a1.holds},
                   {"span_dim", hyp.a1.span_dim},
                   {"basis", one_based(hyp.a1.basis_indices)},
                   {"reindexed", hyp.a1.reindexed}};
    h["A2"] = Json{{"status", to_string(hyp.a2.status)},
                   {"jacobian_rank", hyp.a2.jacobian_rank},
                   {"failed", hyp.a2.which_failed}};
    h["A3"] = Json{{"holds", hyp.a3.holds}};
    if (hyp.a3.vanishing_minor) h["A3"]["vanishing_minor"] = one_based(*hyp.a3.vanishing_minor);
    if (hyp.a1.holds) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < hyp.matrix_A.rows(); ++i) {
            Json row = Json::array();
            for (std::size_t j = 0; j < hyp.matrix_A.cols(); ++j) row.push_back(hyp.matrix_A(i, j).to_string());
            rows.push_back(std::move(row));
        }
        h["matrix_A"] = std::move(rows);
    }
    out["hypotheses"] = std::move(h);
    ctx.check("A1", hyp.a1.holds, "span " + std::to_string(hyp.a1.span_dim) + ", basis F" + join(
                                     [&] {
                                         std::vector<std::size_t> b;
                                         for (auto x : hyp.a1.basis_indices) b.push_back(x + 1);
                                         return b;
                                     }(),
                                     " F"));
    {
        std::string detail = "jacobian rank " + std::to_string(hyp.a2.jacobian_rank);
        for (const auto& w : hyp.a2.which_failed) detail += "; " + w;
        if (hyp.a2.status == A2Status::not_checked) detail = "no base point given";
        ctx.check("A2", hyp.a2.status == A2Status::holds ? Status::pass
                        : hyp.a2.status == A2Status::failed ? Status::fail
                                                            : Status::skipped,
                  detail);
    }
    ctx.check("A3", hyp.a3.holds, hyp.a3.holds ? "every n-minor of A is nonzero" : "a vanishing n-minor");
    ctx.values["hypotheses_hold"] = hyp.holds();
    ctx.values["a2"] = to_string(hyp.a2.status);
    ctx.values["jacobian_rank"] = hyp.a2.jacobian_rank;

    const bool theorem_weight = sys.has_theorem_weight();
    ctx.check("theorem_weight", theorem_weight, "first s weights sum to zero, the rest vanish");

    bool certified = hyp.holds() && theorem_weight;
    if (theorem_weight) {
        const OmegaCertificate omega = build_omega(sys);
        Json o{{"well_defined", omega.well_defined}, {"checked_j", one_based(omega.checked_j)}};
        if (ctx.options.emit_forms) o["form"] = omega.form.to_string();
        out["omega"] = std::move(o);
        ctx.check("omega_well_defined", omega.well_defined);
        if (ctx.options.emit_forms) ctx.note("omega = " + omega.form.to_string());

        const CocycleFamily fam = build_cocycles(sys, sys.n - 1, omega, ctx.options.jobs);
        out["cocycles"] = cocycle_json(fam, ctx.options.emit_forms);
        const bool ok = all_certified(fam);
        ctx.check("cocycles_degree_" + std::to_string(n - 1), ok,
                  std::to_string(fam.certificates.size()) + " certificates, " + std::to_string(fam.distinguished.size()) +
                      " distinguished");
        ctx.values["cocycles_certified"] = ok;
        ctx.values["distinguished_count"] = fam.distinguished.size();
        certified = certified && ok;
        if (ctx.options.emit_forms)
            for (const auto& c : fam.certificates) {
                std::vector<std::size_t> idx;
                for (auto x : c.indices) idx.push_back(x + 1);
                ctx.note("eta[" + join(idx) + "] = " + c.eta.to_string());
            }
        if (sys.s < sys.m()) {
            const CocycleFamily top = build_cocycles(sys, sys.n, omega, ctx.options.jobs);
            out["top_cocycles"] = cocycle_json(top, ctx.options.emit_forms);
            const bool tok = all_certified(top);
            ctx.check("cocycles_degree_" + std::to_string(n), tok,
                      std::to_string(top.certificates.size()) + " certificates");
            ctx.values["top_cocycles_certified"] = tok;
            certified = certified && tok;
        }
        const bool vanish = brackets_vanish_above(sys);
        ctx.check("brackets_vanish_above", vanish);
    }

    const LowerBounds b = lower_bounds(sys);
    Json bounds{{"trivial_weight", b.trivial_weight}, {"weight_user_asserted", b.weight_user_asserted}};
    bounds["h_top_minus_1"] = b.h_top_minus_1 ? Json(*b.h_top_minus_1) : Json(nullptr);
    bounds["h_top"] = b.h_top ? Json(*b.h_top) : Json(nullptr);
    Json betti = Json::array();
    for (auto [k, v] : b.betti) betti.push_back(Json{{"k", k}, {"bound", v}});
    bounds["betti"] = std::move(betti);

    // Local model on a reordering with non-integral end weights.
    const bool rational = std::all_of(sys.weights.begin(), sys.weights.end(), [](const Scalar& w) { return w.is_rational(); });
    const auto order = hyp.holds() && theorem_weight && rational ? local_model_order(sys) : std::nullopt;
    if (order) {
        const LocalModelVerdict v = restrict_and_certify(reordered(sys, *order));
        Json lm;
        lm["order"] = one_based(*order);
        lm["weights"] = scalars_json(v.weights);
        lm["normalized_weights"] = scalars_json(v.normalized_weights);
        lm["ranks"] = v.ranks;
        Json fam = Json::array();
        for (const auto& t : v.family) {
            std::vector<std::size_t> orig;
            for (auto x : t) orig.push_back((*order)[x]);
            fam.push_back(one_based(orig));
        }
        lm["family"] = std::move(fam);
        lm["family_independent"] = v.family_independent;
        if (v.top_family_independent) lm["top_family_independent"] = *v.top_family_independent;
        lm["omega_restricts"] = v.omega_restricts;
        lm["eta_restricts"] = v.eta_restricts;
        lm["arrangement"] = analyze_arrangement(v.local, v.normalized_weights, ctx, "local_");
        out["local_model"] = std::move(lm);
        ctx.values["local_ranks"] = v.ranks;
        ctx.values["local_family_independent"] = v.family_independent;
        ctx.check("local_model", v.certified(),
                  "ranks (" + join(v.ranks) + "), family of " + std::to_string(v.family.size()) +
                      (v.family_independent ? " independent" : " dependent") +
                      (v.omega_restricts && v.eta_restricts ? ", forms restrict" : ", forms do not restrict"));
        certified = certified && v.certified();
    } else {
        const char* why = !hyp.holds()        ? "hypotheses do not hold"
                          : !theorem_weight   ? "not a theorem weight"
                          : !rational         ? "non-rational weight"
                                              : "trivial weight";
        ctx.check("local_model", Status::skipped, why);
        certified = false;
    }
    bounds["certified"] = certified;
    out["bounds"] = std::move(bounds);
    if (b.h_top_minus_1) ctx.values["h_top_minus_1_bound"] = *b.h_top_minus_1;
    if (b.h_top) ctx.values["h_top_bound"] = *b.h_top;
    ctx.values["bound_certified"] = certified;
    if (b.h_top_minus_1)
        ctx.note("bound: dim H^" + std::to_string(n - 1) + " >= " + std::to_string(*b.h_top_minus_1) +
                 (b.h_top ? ", dim H^" + std::to_string(n) + " >= " + std::to_string(*b.h_top) : std::string()) +
                 (certified ? " (certified)" : " (not certified)"));

    if (factors) {
        Json sup;
        auto [a, w] = support_arrangement(sys, *factors, ctx, sup);
        sup["induced_weights"] = scalars_json(w);
        sup["arrangement"] = analyze_arrangement(a, w, ctx, "support_");
        sup["aomoto"] = analyze_aomoto(a, w, {}, ctx, "support_");
        out["support"] = std::move(sup);
    }
    return out;
}

DivisorSystem make_system(const ProblemFile& file, const DivisorPayload& p) {
    DivisorSystem sys;
    sys.n = p.n;
    sys.d = p.d;
    sys.s = p.s;
    sys.F = p.divisors;
    sys.field = file.field;
    sys.base_point = p.base_point;
    return sys;
}

void resolve_weights(DivisorSystem& sys, const std::optional<std::vector<Scalar>>& given, const ProblemFile& file,
                     const RunOptions& options, Json& report) {
    if (given) {
        sys.weights = *given;
        report["weights_source"] = "file";
    } else {
        if (sys.s < 2 || sys.m() < sys.s) throw UsageError("cannot draw weights: need 2 <= s <= m");
        sys.weights = seeded_weights(static_cast<std::size_t>(sys.s), static_cast<std::size_t>(sys.m()),
                                     mix_seed(options.seed, file.id));
        report["weights_source"] = "seed";
    }
    report["weights"] = scalars_json(sys.weights);
}

Json header(const ProblemFile& file, const RunOptions& options, const std::string& input_digest, const char* verb) {
    Json j;
    j["tool"] = "twistcert";
    j["version"] = tool_version();
    j["schema_version"] = kSchemaVersion;
    j["verb"] = verb;
    j["id"] = file.id;
    j["mode"] = to_string(file.mode);
    j["field"] = file.field->to_string();
    j["input_digest"] = input_digest.empty() ? digest(print_problem(file)) : input_digest;
    j["seed"] = options.seed;
    return j;
}

/// Sub-verbs compute a subset of the values; with `strict` false, expectations on other values are not evaluated.
Report finish(const ProblemFile& file, Json j, Context& ctx, std::chrono::steady_clock::time_point start,
              bool strict = true) {
    Json exps = Json::array();
    bool met_all = true;
    std::size_t met_count = 0, evaluated = 0;
    for (const auto& e : file.expectations) {
        Json x{{"name", e.name}, {"expected", e.value}};
        const bool known = ctx.values.contains(e.name);
        if (!known && !strict) {
            x["actual"] = nullptr;
            x["met"] = nullptr;
            exps.push_back(std::move(x));
            continue;
        }
        ++evaluated;
        const bool met = known && ctx.values[e.name] == e.value;
        x["actual"] = known ? ctx.values[e.name] : Json(nullptr);
        x["met"] = met;
        met_all = met_all && met;
        met_count += met ? 1 : 0;
        exps.push_back(std::move(x));
        if (!met)
            ctx.lines.push_back("  [fail] expectation " + e.name + ": expected " + e.value.dump() + ", got " +
                                (known ? ctx.values[e.name].dump() : std::string("no such value")));
    }
    bool checks_ok = true;
    for (const auto& c : ctx.checks) checks_ok = checks_ok && c["status"] != "fail";
    Report r;
    r.passed = checks_ok && met_all;
    j["checks"] = ctx.checks;
    j["values"] = ctx.values;
    j["expectations"] = std::move(exps);
    j["passed"] = r.passed;
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    j["timing_ms"] = std::round(ms * 1000) / 1000;
    std::ostringstream os;
    os << file.id << " (" << to_string(file.mode) << ", " << file.field->to_string() << ")\n";
    for (const auto& l : ctx.lines) os << l << "\n";
    if (evaluated > 0)
        os << "  expectations: " << met_count << "/" << evaluated << " met\n";
    os << (r.passed ? "PASS" : "FAIL") << "\n";
    r.json = std::move(j);
    r.summary = os.str();
    return r;
}

Arrangement build_arrangement(const ProblemFile& file, const ArrangementPayload& p) {
    std::vector<Hyperplane> hs;
    for (const auto& row : p.hyperplanes) {
        Hyperplane h;
        h.normal.assign(row.begin(), row.end() - 1);
        h.offset = row.back();
        hs.push_back(std::move(h));
    }
    return Arrangement(p.ambient, p.kind, std::move(hs), file.field);
}

std::vector<std::size_t> zero_based_order(const ArrangementPayload& p) {
    std::vector<std::size_t> out;
    if (p.order)
        for (std::size_t x : *p.order) out.push_back(x - 1);
    return out;
}

} // namespace

Report run(const ProblemFile& file, const RunOptions& options, const std::string& input_digest) {
    if (file.mode == Mode::arrangement) return run_arrangement(file, options, input_digest);
    if (file.mode == Mode::aomoto) return run_aomoto(file, options, input_digest);
    const auto start = std::chrono::steady_clock::now();
    Context ctx(options);
    Json j = header(file, options, input_digest, "verify");
    if (const auto* p = std::get_if<DivisorPayload>(&file.payload)) {
        DivisorSystem sys = make_system(file, *p);
        resolve_weights(sys, p->weights, file, options, j);
        j["result"] = divisor_pipeline(sys, p->factors, ctx);
    } else {
        const auto& a = std::get<AffinePayload>(file.payload);
        const auto m = a.polynomials.size();
        DivisorSystem probe;
        probe.s = a.s;
        probe.F.resize(m);
        std::vector<Scalar> w;
        if (a.weights) {
            w = *a.weights;
            j["weights_source"] = "file";
        } else {
            if (a.s < 2 || m < static_cast<std::size_t>(a.s)) throw UsageError("cannot draw weights: need 2 <= s <= m");
            w = seeded_weights(static_cast<std::size_t>(a.s), m, mix_seed(options.seed, file.id));
            j["weights_source"] = "seed";
        }
        j["weights"] = scalars_json(w);
        for (const auto& f : a.polynomials)
            if (f.nvars() != a.n) throw UsageError("affine polynomials must have n variables");
        AffineProjectivization proj = projectivize_affine(a.polynomials, w);
        proj.system.s = a.s;
        if (a.base_point) {
            if (a.base_point->size() != static_cast<std::size_t>(a.n)) throw UsageError("affine base point needs n coordinates");
            std::vector<Scalar> pt{Scalar::one(file.field)};
            pt.insert(pt.end(), a.base_point->begin(), a.base_point->end());
            proj.system.base_point = std::move(pt);
        }
        bool equal_degrees = std::all_of(proj.degrees.begin(), proj.degrees.end(),
                                         [&](int d) { return d == proj.degrees.front(); });
        Scalar total(0);
        for (const auto& x : w) total += x;
        Json pj{{"degrees", proj.degrees},
                {"d", proj.system.d},
                {"divisors", [&] {
                     Json ds = Json::array();
                     for (const auto& f : proj.system.F) ds.push_back(f.to_string());
                     return ds;
                 }()},
                {"infinity_in_support", proj.infinity_in_support},
                {"infinity_weight", proj.infinity_weight.to_string()},
                {"zero_infinity_weight_case", proj.zero_infinity_weight_case}};
        j["projectivization"] = std::move(pj);
        ctx.values["infinity_in_support"] = proj.infinity_in_support;
        ctx.values["infinity_weight"] = proj.infinity_weight.to_string();
        ctx.values["zero_infinity_weight_case"] = proj.zero_infinity_weight_case;
        const bool rule = proj.zero_infinity_weight_case == (equal_degrees && total.is_zero()) &&
                          (!proj.zero_infinity_weight_case || proj.infinity_weight.is_zero());
        ctx.check("infinity_weight_rule", rule, "weight of H_inf = " + proj.infinity_weight.to_string());
        j["result"] = divisor_pipeline(proj.system, std::nullopt, ctx);
        // The base point [1 : u] never lies on H_inf, so the affine bound is the projective one.
        const bool certified = ctx.values.value("bound_certified", false);
        if (certified && ctx.values.contains("h_top_minus_1_bound")) {
            ctx.values["corollary_bound"] = ctx.values["h_top_minus_1_bound"];
            ctx.note("affine bound: dim H^" + std::to_string(a.n - 1) + "(M^a) >= " +
                     ctx.values["h_top_minus_1_bound"].dump());
        }
    }
    return finish(file, std::move(j), ctx, start);
}

Report run_arrangement(const ProblemFile& file, const RunOptions& options, const std::string& input_digest) {
    const auto start = std::chrono::steady_clock::now();
    Context ctx(options);
    Json j = header(file, options, input_digest, "arrangement");
    if (const auto* p = std::get_if<ArrangementPayload>(&file.payload)) {
        const Arrangement a = build_arrangement(file, *p);
        j["result"] = analyze_arrangement(a, p->weights, ctx, "");
    } else if (const auto* d = std::get_if<DivisorPayload>(&file.payload); d && d->factors) {
        DivisorSystem sys = make_system(file, *d);
        resolve_weights(sys, d->weights, file, options, j);
        sys.validate();
        Json sup;
        auto [a, w] = support_arrangement(sys, *d->factors, ctx, sup);
        sup["induced_weights"] = scalars_json(w);
        sup["arrangement"] = analyze_arrangement(a, w, ctx, "");
        j["result"] = std::move(sup);
    } else {
        throw UsageError("the arrangement verb needs an arrangement or aomoto file, or a divisor system with factors");
    }
    return finish(file, std::move(j), ctx, start, file.mode == Mode::arrangement);
}

Report run_aomoto(const ProblemFile& file, const RunOptions& options, const std::string& input_digest) {
    const auto start = std::chrono::steady_clock::now();
    Context ctx(options);
    Json j = header(file, options, input_digest, "aomoto");
    if (const auto* p = std::get_if<ArrangementPayload>(&file.payload)) {
        const Arrangement a = build_arrangement(file, *p);
        j["result"] = analyze_aomoto(a, p->weights, zero_based_order(*p), ctx, "");
    } else if (const auto* d = std::get_if<DivisorPayload>(&file.payload); d && d->factors) {
        DivisorSystem sys = make_system(file, *d);
        resolve_weights(sys, d->weights, file, options, j);
        sys.validate();
        Json sup;
        auto [a, w] = support_arrangement(sys, *d->factors, ctx, sup);
        sup["induced_weights"] = scalars_json(w);
        sup["aomoto"] = analyze_aomoto(a, w, {}, ctx, "");
        j["result"] = std::move(sup);
    } else {
        throw UsageError("the aomoto verb needs an arrangement or aomoto file, or a divisor system with factors");
    }
    return finish(file, std::move(j), ctx, start, file.mode == Mode::aomoto);
}

} // namespace twistcert::cli
