#include "support/arrangement_oracles.hpp"
#include "support/lemma_suites.hpp"
#include "twistcert/aomoto.hpp"
#include "twistcert/cli.hpp"
#include "twistcert/poly_io.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace twistcert;
using namespace twistcert::cli;
using twistcert::testing::Random;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::map<std::string, Report> g_reports;

const Report& corpus_report(const std::string& id) {
    auto it = g_reports.find(id);
    if (it == g_reports.end()) {
        const auto entries = select_corpus(id);
        it = g_reports.emplace(id, run(parse_problem(entries.front().text), RunOptions{false, 0, 4})).first;
    }
    return it->second;
}

bool check_passed(const Report& r, const std::string& name) {
    for (const auto& c : r.json["checks"])
        if (c["name"] == name) return c["status"] == "pass";
    return false;
}

Arrangement rebuild(const Json& analysis, const FieldSpec* field) {
    std::vector<MultiPoly> forms;
    const int ambient = analysis["ambient"];
    for (const auto& h : analysis["hyperplanes"]) forms.push_back(parse_poly(h.get<std::string>(), ambient, field));
    return Arrangement::from_linear_forms(forms, parse_arrangement_kind(analysis["kind"]));
}

std::vector<Scalar> admissible_weights(int s) {
    std::vector<Scalar> w;
    Scalar total(0);
    for (int i = 0; i + 1 < s; ++i) {
        w.emplace_back(mpq_class(1, i + 2));
        total += w.back();
    }
    w.push_back(-total);
    return w;
}

Outcome criterion1() {
    const auto res = twistcert::testing::run_lemma1_suite(240, 101);
    bool ok = res.instances >= 200;
    int checks = 0;
    for (int part = 0; part < 6; ++part) {
        ok = ok && res.checked[part] > 0 && res.failures[part] == 0;
        checks += res.checked[part];
    }
    return {ok, std::to_string(res.instances) + " instances, " + std::to_string(checks) + " identity checks, p in 2..5, l in 2..4"};
}

Outcome criterion2() {
    const auto res = twistcert::testing::run_lemma2_suite(120, 102);
    bool ok = res.families >= 100 && res.agree == res.families && res.symbolic_mismatch == 0 && res.dependent > 0 &&
              res.independent > 0;
    // Mixed degrees: f and f^k g have dependent dlogs only through g.
    Random rng(103);
    int counterexamples = 0;
    std::string recorded;
    for (int t = 0; t < 20; ++t) {
        const MultiPoly f = rng.homogeneous(3, 1, 3);
        if (f.is_zero()) continue;
        const MultiPoly g = f.pow(static_cast<unsigned>(2 + t % 2));
        const std::vector<RationalFunction> fs{RationalFunction(f), RationalFunction(g)};
        const LogDependence ld = log_dependence(fs);
        if (ld.bracket_zero != ld.wedge_zero) {
            if (counterexamples++ == 0) recorded = "{" + f.to_string() + ", " + g.to_string() + "}";
        }
    }
    ok = ok && counterexamples >= 1;
    return {ok, std::to_string(res.families) + " same-degree families agree (" + std::to_string(res.dependent) +
                    " dependent); " + std::to_string(counterexamples) + " mixed-degree counterexamples, e.g. " + recorded};
}

Outcome criterion3() {
    bool ok = true;
    std::string detail;
    for (const char* id : {"conics", "conics-two-lines", "conics-line-pairs", "ceva"}) {
        const Report& r = corpus_report(id);
        const Json& v = r.json["values"];
        bool eta12 = false;
        for (const auto& c : r.json["result"]["cocycles"]["certificates"])
            if (c["indices"] == Json::array({1, 2}))
                eta12 = c["d_closed"] == true && c["nabla_closed"] == true && c["nonzero"] == true;
        const bool here = r.passed && v["hypotheses_hold"] == true && eta12 && v["h_top_minus_1_bound"] == 1 &&
                          v["local_family_independent"] == true && v["bound_certified"] == true;
        ok = ok && here;
        detail += std::string(detail.empty() ? "" : ", ") + id + (here ? " ok" : " FAILED");
    }
    return {ok, detail + "; A1-A3 at [1:1:1], eta[1,2] certified, dim H^1 >= 1"};
}

Outcome criterion4() {
    bool ok = true;
    std::ostringstream os;
    for (auto [s, n] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {4, 3}, {5, 3}}) {
        const GenericLemmaVerdict v = generic_lemma_suite(s, n, admissible_weights(s), 104 + static_cast<unsigned>(s * 10 + n));
        ok = ok && v.passed();
        os << "(" << s << "," << n << "): C(s-2,n-1)=" << v.expected << (v.passed() ? " ok " : " FAILED ");
    }
    return {ok, os.str() + "with both families bases"};
}

Outcome criterion5() {
    std::mt19937_64 rng(105);
    bool ok = true;
    std::ostringstream os;
    for (int s : {4, 5, 6}) {
        const CorollaryVerdict v = untwisted_corollary_check(random_general_position(s, 2, rng));
        ok = ok && v.passed();
        os << "s=" << s << (v.passed() ? " ok " : " FAILED ");
    }
    return {ok, os.str() + "(OS dims C(s,k), both cocycle families of full rank)"};
}

Outcome criterion6() {
    const auto start = std::chrono::steady_clock::now();
    const Report& r = corpus_report("hessian");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const Json& v = r.json["values"];
    const bool ok = r.passed && v["support_size"] == 12 && v["support_aomoto_h1"] == 2 && check_passed(r, "factorization") &&
                    secs < 300;
    std::ostringstream os;
    os << "12 lines from the four cubics over Q[t]/(t^2+t+1), Aomoto ranks " << v["support_aomoto_ranks"].dump()
       << ", " << secs << " s";
    return {ok, os.str()};
}

Outcome criterion7() {
    const Report& ceva = corpus_report("ceva");
    const Report& hessian = corpus_report("hessian");
    const auto& cv = ceva.json["values"];
    const auto& hv = hessian.json["values"];
    const bool ceva_ok = cv.value("local_dense_edge_count", 0) > 0 && cv.contains("local_dense_edge_check") &&
                         check_passed(ceva, "local_beta_equals_bounded_chambers") &&
                         check_passed(ceva, "local_beta_general_position") &&
                         check_passed(ceva, "support_beta_equals_bounded_chambers") &&
                         cv.value("support_dense_edge_count", 0) > 0;
    const bool hessian_ok = hv.value("local_dense_edge_count", 0) > 0 && hv.contains("local_dense_edge_check") &&
                            check_passed(hessian, "local_beta_general_position") && hv["local_beta"] == 2 &&
                            hv.value("support_dense_edge_count", 0) > 0;
    std::ostringstream os;
    os << "Ceva dual beta " << cv["local_beta"] << " (= bounded chambers of every decone, = C(1,1)), "
       << cv["support_dense_edge_count"] << " dense edges on the 6 lines; Hessian dual beta " << hv["local_beta"]
       << " (= C(2,1)), " << hv["support_dense_edge_count"] << " dense edges on the 12 lines";
    return {ceva_ok && hessian_ok, os.str()};
}

Outcome criterion8() {
    const Report& l8 = corpus_report("l8");
    const auto& v = l8.json["values"];
    bool deg2 = false;
    for (const auto& c : l8.json["result"]["cocycles"]["certificates"])
        if (c["distinguished"] == true) deg2 = c["d_closed"] == true && c["nabla_closed"] == true && c["nonzero"] == true;
    bool ok = l8.passed && v["divisor_sum_is_zero"] == true && v["hypotheses_hold"] == true && deg2 &&
              l8.json["result"]["cocycles"]["degree"] == 2;
    std::string detail = std::string("L8 ") + (ok ? "ok" : "FAILED");
    for (const char* id : {"monomial-2-2", "monomial-2-3", "monomial-3-2"}) {
        const Report& r = corpus_report(id);
        const bool here = r.passed && r.json["values"]["divisor_sum_is_zero"] == true &&
                          r.json["values"]["h_top_minus_1_bound"] == 1 && r.json["values"]["bound_certified"] == true;
        ok = ok && here;
        detail += std::string(", ") + id + (here ? " ok" : " FAILED");
    }
    return {ok, detail};
}

Outcome criterion9() {
    const FieldSpec* q = FieldSpec::rationals();
    struct Case {
        std::vector<const char*> polys;
        std::vector<Scalar> weights;
    };
    const std::vector<Case> cases{
        {{"x0^2+x1^2-2", "x0^2+2*x1^2-3", "2*x0^2+x1^2-3"}, {Scalar(mpq_class(1, 2)), Scalar(mpq_class(-1, 3)), Scalar(mpq_class(-1, 6))}},
        {{"x0^2+x1^2-2", "x0^2+2*x1^2-3", "2*x0^2+x1^2-3"}, {Scalar(1), Scalar(1), Scalar(mpq_class(-1, 2))}},
        {{"x0+x1", "x0^2-x1"}, {Scalar(1), Scalar(-1)}},
        {{"x0+x1", "x0^2-x1"}, {Scalar(2), Scalar(-1)}},
        {{"x0-1", "x1-1", "x0+x1"}, {Scalar(mpq_class(1, 3)), Scalar(mpq_class(1, 3)), Scalar(mpq_class(-2, 3))}},
        {{"x0*x1-1", "x0-x1"}, {Scalar(mpq_class(1, 2)), Scalar(mpq_class(1, 2))}},
    };
    bool ok = true;
    int zero_cases = 0;
    for (const auto& c : cases) {
        std::vector<MultiPoly> f;
        for (const char* p : c.polys) f.push_back(parse_poly(p, 2, q));
        const AffineProjectivization p = projectivize_affine(f, c.weights);
        const bool equal = std::all_of(p.degrees.begin(), p.degrees.end(), [&](int d) { return d == p.degrees.front(); });
        Scalar total(0);
        for (const auto& w : c.weights) total += w;
        const bool expected = equal && total.is_zero();
        ok = ok && p.zero_infinity_weight_case == expected && p.infinity_in_support == !equal;
        if (equal) ok = ok && p.infinity_weight.is_zero() == total.is_zero();
        zero_cases += p.zero_infinity_weight_case ? 1 : 0;
    }
    const Report& r = corpus_report("conics-affine");
    const bool bound = r.passed && r.json["values"].value("corollary_bound", 0) == 1;
    return {ok && bound, std::to_string(cases.size()) + " projectivizations (" + std::to_string(zero_cases) +
                             " with zero infinity weight); affine conics bound dim H^1(M^a) >= " +
                             r.json["values"].value("corollary_bound", Json(nullptr)).dump()};
}

Outcome criterion10() {
    const std::vector<long long> primes{7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 101, 103, 107, 109, 113, 127};
    int arrangements = 0, planar = 0;
    bool ok = true;
    std::string failures;
    auto oracle = [&](const Arrangement& a, const std::string& name) {
        ++arrangements;
        const IntPolynomial chi = characteristic_polynomial(a);
        bool here = chi == twistcert::testing::whitney_subset_chi(a);
        for (std::size_t i = 0; i < a.size() && a.size() > 1; ++i) {
            const IntPolynomial del = characteristic_polynomial(deletion(a, i));
            const IntPolynomial res = characteristic_polynomial(restriction(a, i));
            for (std::size_t k = 0; k < chi.size(); ++k)
                here = here && chi[k] == (k < del.size() ? del[k] : 0) - (k < res.size() ? res[k] : 0);
        }
        int good = 0;
        for (long long p : primes) {
            if (good == 3) break;
            const auto red = twistcert::testing::reduce_arrangement(a, p);
            if (!red || !twistcert::testing::good_reduction(a, *red)) continue;
            here = here && twistcert::testing::count_complement(*red, a.ambient()) == evaluate(chi, p);
            ++good;
        }
        here = here && good >= 2;
        if (a.field()->is_rationals() && a.is_central() && a.ambient() == 3 && a.rank() == 3) {
            for (std::size_t j = 0; j < a.size(); ++j) {
                const Arrangement lines = decone(a, j);
                const ChamberCounts z = chamber_counts(lines), s = twistcert::testing::sign_vector_chambers(lines);
                here = here && z.regions == s.regions && z.bounded == s.bounded;
                ++planar;
            }
        }
        if (!here) failures += " " + name;
        ok = ok && here;
    };
    for (const auto& e : corpus()) {
        const Report& r = corpus_report(e.id);
        const FieldSpec* field = parse_field(r.json["field"].get<std::string>());
        const Json& res = r.json["result"];
        if (res.contains("support")) oracle(rebuild(res["support"]["arrangement"], field), e.id + "/support");
        if (res.contains("local_model")) oracle(rebuild(res["local_model"]["arrangement"], field), e.id + "/local");
        const ProblemFile file = parse_problem(e.text);
        if (const auto* ap = std::get_if<ArrangementPayload>(&file.payload)) {
            std::vector<Hyperplane> hs;
            for (const auto& row : ap->hyperplanes) hs.push_back({{row.begin(), row.end() - 1}, row.back()});
            oracle(Arrangement(ap->ambient, ap->kind, hs, field), e.id);
        }
    }
    return {ok, std::to_string(arrangements) + " corpus arrangements; " + std::to_string(planar) +
                    " planar decones matched sign-vector enumeration" + (failures.empty() ? "" : "; failed:" + failures)};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"logarithmic bracket identities", criterion1},
        {"bracket/wedge equivalence", criterion2},
        {"conic pencil variants", criterion3},
        {"generic-arrangement lemma", criterion4},
        {"untwisted corollary", criterion5},
        {"Hessian Aomoto H^1", criterion6},
        {"dense edges and beta", criterion7},
        {"L8 and monomial systems", criterion8},
        {"affine correspondence", criterion9},
        {"combinatorics oracles", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += o.passed ? 0 : 1;
        std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << "): " << o.detail
                  << " [" << static_cast<int>(secs * 1000) << " ms]" << std::endl;
    }
    std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
