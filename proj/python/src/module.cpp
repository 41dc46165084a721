#include "twistcert/aomoto.hpp"
#include "twistcert/cli.hpp"
#include "twistcert/errors.hpp"
#include "twistcert/poly_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace twistcert;

namespace {

using Strings = std::vector<std::string>;

std::vector<Scalar> scalars(const Strings& texts, const FieldSpec* field) {
    std::vector<Scalar> out;
    for (const auto& t : texts) out.push_back(parse_scalar(t, field));
    return out;
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& indices) {
    std::vector<std::size_t> out;
    for (auto i : indices) out.push_back(i + 1);
    return out;
}

DivisorSystem divisor_system(const Strings& divisors, int n, int s, const std::optional<Strings>& weights,
                             const std::optional<Strings>& base_point, const std::string& field_text) {
    DivisorSystem sys;
    sys.field = parse_field(field_text);
    sys.n = n;
    sys.s = s < 0 ? static_cast<int>(divisors.size()) : s;
    for (const auto& f : divisors) sys.F.push_back(parse_poly(f, n + 1, sys.field));
    if (!sys.F.empty()) sys.d = sys.F.front().homogeneous_degree().value_or(0);
    if (weights) {
        sys.weights = scalars(*weights, sys.field);
    } else {
        sys.weights.assign(sys.F.size(), Scalar(0));
    }
    if (base_point) sys.base_point = scalars(*base_point, sys.field);
    sys.validate();
    return sys;
}

Arrangement arrangement(const std::vector<Strings>& rows, int ambient, const std::string& kind,
                        const std::string& field_text) {
    const FieldSpec* field = parse_field(field_text);
    std::vector<Hyperplane> hs;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != ambient + 1)
            throw UsageError("each hyperplane row needs ambient + 1 entries");
        std::vector<Scalar> v = scalars(row, field);
        const Scalar offset = v.back();
        v.pop_back();
        hs.push_back({std::move(v), offset});
    }
    return Arrangement(ambient, parse_arrangement_kind(kind), std::move(hs), field);
}

py::tuple report(const cli::Report& r) { return py::make_tuple(r.passed, r.json.dump(), r.summary); }

cli::RunOptions options(bool emit_forms, std::uint64_t seed, unsigned jobs) { return {emit_forms, seed, jobs}; }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact certificates for twisted cohomology of hypersurface complements";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

    m.def("version", &cli::tool_version);
    m.def("digest", [](const std::string& text) { return cli::digest(text); });
    m.def("canonicalize", [](const std::string& text) { return cli::print_problem(cli::parse_problem(text)); },
          py::arg("text"));

    m.def(
        "run",
        [](const std::string& text, const std::string& verb, bool emit_forms, std::uint64_t seed, unsigned jobs) {
            const cli::ProblemFile file = cli::parse_problem(text);
            const auto o = options(emit_forms, seed, jobs);
            const std::string dg = cli::digest(text);
            cli::Report r;
            {
                py::gil_scoped_release release;
                if (verb == "verify") r = cli::run(file, o, dg);
                else if (verb == "arrangement") r = cli::run_arrangement(file, o, dg);
                else if (verb == "aomoto") r = cli::run_aomoto(file, o, dg);
                else throw UsageError("unknown verb '" + verb + "'");
            }
            return report(r);
        },
        py::arg("text"), py::arg("verb") = "verify", py::arg("emit_forms") = false, py::arg("seed") = 0,
        py::arg("jobs") = 1);

    m.def("corpus", [] {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const auto& e : cli::corpus()) out.emplace_back(e.id, e.filename, std::string(e.text));
        return out;
    });
    m.def(
        "run_corpus",
        [](const std::optional<std::string>& only, bool emit_forms, std::uint64_t seed, unsigned jobs) {
            cli::Report r;
            {
                py::gil_scoped_release release;
                r = cli::run_corpus(only, options(emit_forms, seed, jobs));
            }
            return report(r);
        },
        py::arg("only") = py::none(), py::arg("emit_forms") = false, py::arg("seed") = 0, py::arg("jobs") = 1);

    m.def(
        "check_hypotheses",
        [](const Strings& divisors, int n, int s, const std::optional<Strings>& weights,
           const std::optional<Strings>& base_point, const std::string& field) {
            const HypothesisReport r = check_hypotheses(divisor_system(divisors, n, s, weights, base_point, field));
            py::dict out;
            out["holds"] = r.holds();
            out["a1"] = r.a1.holds;
            out["span_dim"] = r.a1.span_dim;
            out["basis"] = one_based(r.a1.basis_indices);
            out["a2"] = to_string(r.a2.status);
            out["jacobian_rank"] = r.a2.jacobian_rank;
            out["a3"] = r.a3.holds;
            return out;
        },
        py::arg("divisors"), py::arg("n"), py::arg("s") = -1, py::arg("weights") = py::none(),
        py::arg("base_point") = py::none(), py::arg("field") = "Q");

    m.def(
        "lower_bounds",
        [](const Strings& divisors, int n, int s, const Strings& weights, const std::optional<Strings>& base_point,
           const std::string& field) {
            const LowerBounds b = lower_bounds(divisor_system(divisors, n, s, weights, base_point, field));
            py::dict out;
            out["h_top_minus_1"] = b.h_top_minus_1;
            out["h_top"] = b.h_top;
            out["betti"] = b.betti;
            out["trivial_weight"] = b.trivial_weight;
            return out;
        },
        py::arg("divisors"), py::arg("n"), py::arg("s"), py::arg("weights"), py::arg("base_point") = py::none(),
        py::arg("field") = "Q");

    m.def(
        "characteristic_polynomial",
        [](const std::vector<Strings>& rows, int ambient, const std::string& kind, const std::string& field) {
            return characteristic_polynomial(arrangement(rows, ambient, kind, field));
        },
        py::arg("hyperplanes"), py::arg("ambient"), py::arg("kind") = "central", py::arg("field") = "Q",
        "Integer coefficients, lowest degree first.");
    m.def(
        "chamber_counts",
        [](const std::vector<Strings>& rows, int ambient, const std::string& kind) {
            const ChamberCounts c = chamber_counts(arrangement(rows, ambient, kind, "Q"));
            return py::make_tuple(c.regions, c.bounded);
        },
        py::arg("hyperplanes"), py::arg("ambient"), py::arg("kind") = "affine", "(regions, bounded regions).");
    m.def(
        "beta",
        [](const std::vector<Strings>& rows, int ambient, const std::string& kind, const std::string& field) {
            return beta_invariant(arrangement(rows, ambient, kind, field));
        },
        py::arg("hyperplanes"), py::arg("ambient"), py::arg("kind") = "central", py::arg("field") = "Q");
    m.def(
        "aomoto_cohomology",
        [](const std::vector<Strings>& rows, const Strings& weights, int ambient, const std::string& kind,
           const std::string& field) {
            Arrangement a = arrangement(rows, ambient, kind, field);
            std::vector<Scalar> w = scalars(weights, a.field());
            AomotoCohomology c;
            {
                py::gil_scoped_release release;
                c = aomoto_cohomology(std::make_shared<const OSAlgebra>(std::move(a)), std::move(w));
            }
            py::dict out;
            out["os_dims"] = c.os_dims;
            out["ranks"] = c.ranks;
            out["label"] = c.label;
            return out;
        },
        py::arg("hyperplanes"), py::arg("weights"), py::arg("ambient"), py::arg("kind") = "central",
        py::arg("field") = "Q");

    m.def(
        "d",
        [](const std::string& form, int nvars, int degree, const std::string& field) {
            return exterior_derivative(parse_form(form, nvars, degree, parse_field(field))).to_string();
        },
        py::arg("form"), py::arg("nvars"), py::arg("degree"), py::arg("field") = "Q");
    m.def(
        "dlog",
        [](const std::string& f, int nvars, const std::string& field) {
            return dlog(parse_rational_function(f, nvars, parse_field(field))).to_string();
        },
        py::arg("f"), py::arg("nvars"), py::arg("field") = "Q");
    m.def(
        "wedge",
        [](const std::string& a, int degree_a, const std::string& b, int degree_b, int nvars, const std::string& field) {
            const FieldSpec* k = parse_field(field);
            return wedge(parse_form(a, nvars, degree_a, k), parse_form(b, nvars, degree_b, k)).to_string();
        },
        py::arg("a"), py::arg("degree_a"), py::arg("b"), py::arg("degree_b"), py::arg("nvars"), py::arg("field") = "Q");
}
