#include "support/oracles.hpp"
#include "support/random.hpp"
#include "twistcert/errors.hpp"
#include "twistcert/matrix.hpp"
#include "twistcert/poly_io.hpp"

#include <gtest/gtest.h>

using namespace twistcert;
using twistcert::testing::Random;

namespace {

const FieldSpec* Q = FieldSpec::rationals();
const FieldSpec* Qxi() { return FieldSpec::extension({1, 1, 1}); }

MultiPoly P(const char* text, int nvars = 3, const FieldSpec* f = Q) { return parse_poly(text, nvars, f); }

} // namespace

TEST(Field, RejectsReducibleOrUnsupported) {
    EXPECT_THROW(FieldSpec::extension({-1, 0, 1}), UsageError);     // t^2-1
    EXPECT_THROW(FieldSpec::extension({-8, 0, 0, 1}), UsageError);  // t^3-8
    EXPECT_THROW(FieldSpec::extension({1, 0, 0, 0, 1}), UsageError);
    EXPECT_THROW(FieldSpec::extension({1, 2}), UsageError);
    EXPECT_NO_THROW(FieldSpec::extension({-2, 0, 0, 1}));
    EXPECT_EQ(Qxi(), FieldSpec::extension({1, 1, 1}));
    EXPECT_EQ(Qxi()->to_string(), "t^2+t+1");
}

TEST(Field, CubeRootOfUnity) {
    const Scalar xi = Scalar::generator(Qxi());
    EXPECT_TRUE(xi.pow(3).is_one());
    EXPECT_TRUE((xi * xi + xi + Scalar(1)).is_zero());
    EXPECT_EQ(xi.inverse(), xi * xi);
    EXPECT_EQ((xi * xi).to_string(), "-t-1");
}

class FieldAxioms : public ::testing::TestWithParam<int> {};

TEST_P(FieldAxioms, HoldOnRandomTriples) {
    const FieldSpec* field = GetParam() == 0 ? Q : Qxi();
    Random rng(1000 + GetParam());
    for (int i = 0; i < 200; ++i) {
        const Scalar a = rng.scalar(field), b = rng.scalar(field), c = rng.scalar(field);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a - a).is_zero());
        if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
    }
}

INSTANTIATE_TEST_SUITE_P(QAndQxi, FieldAxioms, ::testing::Values(0, 1));

TEST(PolyArith, DifferenceOfSquares) {
    EXPECT_EQ(poly_arith(P("x0+x1"), P("x0-x1"), PolyOp::mul).to_string(), "x0^2-x1^2");
}

TEST(PolyArith, AddZeroIsIdentity) {
    const MultiPoly p = P("3*x0^2*x1-1/2*x2+7");
    EXPECT_EQ(poly_arith(p, MultiPoly(3, Q), PolyOp::add), p);
}

TEST(PolyArith, ConicDifference) {
    const MultiPoly a = P("x0^2+x1^2-2*x2^2");
    const MultiPoly b = P("x0^2+2*x1^2-3*x2^2");
    const MultiPoly r = poly_arith(a, b, PolyOp::sub);
    EXPECT_EQ(r, P("-x1^2+x2^2"));
    Random rng(7);
    for (int k = 0; k < 5; ++k) {
        std::vector<Scalar> pt{rng.scalar(Q), rng.scalar(Q), rng.scalar(Q)};
        EXPECT_EQ(r.evaluate(pt), a.evaluate(pt) - b.evaluate(pt));
    }
}

TEST(PolyArith, MismatchIsUsageError) {
    EXPECT_THROW(poly_arith(P("x0"), P("x0", 2), PolyOp::add), UsageError);
    EXPECT_THROW(poly_arith(P("x0"), P("x0", 3, Qxi()), PolyOp::mul), UsageError);
}

TEST(Derivative, Examples) {
    EXPECT_EQ(partial_derivative(P("x0^2*x1"), 0), P("2*x0*x1"));
    EXPECT_TRUE(partial_derivative(P("5"), 0).is_zero());
    const MultiPoly f = P("x0^3+x1^3+x2^3-3*x0*x1*x2");
    const MultiPoly df = partial_derivative(f, 0);
    EXPECT_EQ(df, P("3*x0^2-3*x1*x2"));
    Random rng(11);
    for (int k = 0; k < 5; ++k) {
        std::vector<Scalar> pt{rng.scalar(Q), rng.scalar(Q), rng.scalar(Q)};
        EXPECT_EQ(df.evaluate(pt), twistcert::testing::stencil_derivative(f, pt, 0, rng.nonzero_scalar(Q)));
    }
    EXPECT_THROW(partial_derivative(f, 3), UsageError);
}

TEST(Derivative, LeibnizRule) {
    Random rng(12);
    for (int i = 0; i < 50; ++i) {
        const MultiPoly f = rng.poly(3, 3, 4), g = rng.poly(3, 3, 4);
        for (int v = 0; v < 3; ++v)
            EXPECT_EQ((f * g).derivative(v), f.derivative(v) * g + f * g.derivative(v));
    }
}

TEST(Derivative, EulerIdentity) {
    Random rng(13);
    for (int i = 0; i < 50; ++i) {
        const int d = static_cast<int>(rng.integer(1, 4));
        const MultiPoly f = rng.homogeneous(3, d, 5);
        MultiPoly acc(3, Q);
        for (int v = 0; v < 3; ++v) acc += MultiPoly::variable(3, v, Q) * f.derivative(v);
        EXPECT_EQ(acc, f * Scalar(d));
    }
}

TEST(HomogeneousDegree, Examples) {
    EXPECT_EQ(homogeneous_degree(RationalFunction(P("x0^2"), P("x1"))), 1);
    EXPECT_FALSE(homogeneous_degree(RationalFunction(P("x0+x1^2"))).has_value());
    EXPECT_EQ(homogeneous_degree(RationalFunction(P("x0^2+x1^2-2*x2^2"), P("x0^2+2*x1^2-3*x2^2"))), 0);
    EXPECT_THROW(homogeneous_degree(RationalFunction(3, Q)), UsageError);
}

TEST(RationalFunction, Equivalence) {
    Random rng(14);
    for (int i = 0; i < 50; ++i) {
        const MultiPoly a = rng.nonzero_poly(2, 2, 3), b = rng.nonzero_poly(2, 2, 3), c = rng.nonzero_poly(2, 2, 3);
        const RationalFunction x(a, b);
        const RationalFunction y(a * c, b * c);
        const RationalFunction z(a * c * c, b * c * c);
        EXPECT_EQ(x, x);
        EXPECT_EQ(x, y);
        EXPECT_EQ(y, x);
        EXPECT_EQ(y, z);
        EXPECT_EQ(x, z);
        EXPECT_TRUE((x + RationalFunction(-a, b)).is_zero());
        EXPECT_EQ((x * y.inverse()), RationalFunction::constant(2, Scalar(1), Q));
    }
}

TEST(RationalFunction, QuotientRuleMatchesProduct) {
    Random rng(15);
    for (int i = 0; i < 20; ++i) {
        const RationalFunction f(rng.nonzero_poly(2, 2, 3), rng.nonzero_poly(2, 2, 3));
        const RationalFunction g(rng.nonzero_poly(2, 2, 3), rng.nonzero_poly(2, 2, 3));
        EXPECT_EQ((f * g).derivative(1), f.derivative(1) * g + f * g.derivative(1));
    }
}

TEST(Evaluate, Examples) {
    const std::vector<Scalar> ones{Scalar(1), Scalar(1), Scalar(1)};
    EXPECT_TRUE(evaluate(P("x0^2+x1^2-2*x2^2"), ones).is_zero());
    const std::vector<Scalar> pole{Scalar(1), Scalar(0), Scalar(0)};
    EXPECT_THROW(evaluate(RationalFunction(P("x0"), P("x1")), pole), PoleError);
    EXPECT_EQ(evaluate(P("-7/3"), pole), Scalar(mpq_class(-7, 3)));
}

TEST(Matrix, Identity) {
    Matrix m(3, 3, 1);
    for (int i = 0; i < 3; ++i) m(i, i) = RationalFunction::constant(1, Scalar(1), Q);
    const auto r = rank_kernel_det(m);
    EXPECT_EQ(r.rank, 3u);
    EXPECT_TRUE(r.kernel.empty());
    EXPECT_EQ(*r.det, RationalFunction::constant(1, Scalar(1), Q));
}

TEST(Matrix, ConicMinors) {
    // Columns of A for F1, F2, F3 in the basis u = x0^2-x2^2, v = x1^2-x2^2.
    const long cols[3][2] = {{1, 1}, {1, 2}, {2, 1}};
    std::vector<long> minors;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            ScalarMatrix m(2, 2);
            for (int i = 0; i < 2; ++i) {
                m(i, 0) = Scalar(cols[a][i]);
                m(i, 1) = Scalar(cols[b][i]);
            }
            const Scalar d = determinant(m);
            EXPECT_EQ(d, twistcert::testing::cofactor_det({{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}));
            minors.push_back(d.as_rational()->get_num().get_si());
        }
    EXPECT_EQ(minors, (std::vector<long>{1, -1, -3}));
}

TEST(Matrix, EqualRows) {
    Matrix m(3, 3, 2);
    const MultiPoly row[3] = {P("x0", 2), P("x1+1", 2), P("x0*x1", 2)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = RationalFunction(row[j], P(i == 2 ? "x0" : "1", 2));
    for (int j = 0; j < 3; ++j) m(1, j) = m(0, j);
    const auto r = rank_kernel_det(m);
    EXPECT_LT(r.rank, 3u);
    EXPECT_TRUE(r.det->is_zero());
}

TEST(Matrix, BareissMatchesCofactorOnRandom4x4) {
    Random rng(16);
    for (int trial = 0; trial < 40; ++trial) {
        Matrix m(4, 4, 1);
        std::vector<std::vector<Scalar>> s(4, std::vector<Scalar>(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                s[i][j] = trial % 4 == 0 && i == 3 ? s[0][j] * Scalar(2) : rng.scalar(Q);
                m(i, j) = RationalFunction::constant(1, s[i][j], Q);
            }
        const auto r = rank_kernel_det(m);
        EXPECT_EQ(*r.det, RationalFunction::constant(1, twistcert::testing::cofactor_det(s), Q));
        EXPECT_EQ(r.rank + r.kernel.size(), 4u);
        for (const auto& k : r.kernel)
            for (int i = 0; i < 4; ++i) {
                Scalar acc(0);
                for (int j = 0; j < 4; ++j) acc += s[i][j] * k[j].constant_term();
                EXPECT_TRUE(acc.is_zero());
            }
    }
}

TEST(Matrix, KernelOverFunctionField) {
    Random rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int R = 3, C = 5;
        Matrix m(R, C, 2);
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < C; ++j) m(i, j) = RationalFunction(rng.linear(2), rng.nonzero_poly(2, 1, 2));
        const auto r = rank_kernel_det(m);
        EXPECT_EQ(r.rank + r.kernel.size(), static_cast<std::size_t>(C));
        for (const auto& k : r.kernel) {
            bool nonzero = false;
            for (const auto& e : k) nonzero = nonzero || !e.is_zero();
            EXPECT_TRUE(nonzero);
            for (int i = 0; i < R; ++i) {
                RationalFunction acc(2, Q);
                for (int j = 0; j < C; ++j) acc += m(i, j) * RationalFunction(k[j]);
                EXPECT_TRUE(acc.is_zero());
            }
        }
    }
}

TEST(Matrix, SymbolicDeterminant) {
    Random rng(18);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix m(3, 3, 2);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = RationalFunction(rng.linear(2));
        // Cofactor expansion in K(x).
        auto e = [&](int i, int j) { return m(i, j); };
        const RationalFunction cof = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
                                     e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
                                     e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
        EXPECT_EQ(*rank_kernel_det(m).det, cof);
    }
}

TEST(Matrix, SolveScalarSystem) {
    ScalarMatrix m(2, 3);
    const long a[2][3] = {{1, 0, 3}, {0, 1, -1}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = Scalar(a[i][j]);
    const std::vector<Scalar> b{Scalar(2), Scalar(5)};
    const auto x = solve(m, b);
    ASSERT_TRUE(x.has_value());
    for (int i = 0; i < 2; ++i) {
        Scalar acc(0);
        for (int j = 0; j < 3; ++j) acc += m(i, j) * (*x)[j];
        EXPECT_EQ(acc, b[i]);
    }
}

TEST(PolyIo, RoundTrip) {
    Random rng(19);
    for (int i = 0; i < 100; ++i) {
        const FieldSpec* f = i % 2 ? Qxi() : Q;
        const MultiPoly p = rng.poly(4, 4, 6, f);
        EXPECT_EQ(parse_poly(p.to_string(), 4, f), p);
        EXPECT_EQ(parse_poly(p.to_string(), 4, f).to_string(), p.to_string());
    }
}

TEST(PolyIo, Grammar) {
    EXPECT_EQ(P("(x0+x1)^2-2*x0*x1").to_string(), "x0^2+x1^2");
    EXPECT_EQ(P("x0+t*x1", 2, Qxi()).to_string(), "x0+t*x1");
    EXPECT_EQ(P("(t+1)*x1", 2, Qxi()).to_string(), "(t+1)*x1");
    EXPECT_EQ(parse_field("Q"), Q);
    EXPECT_EQ(parse_field("t^2+t+1"), Qxi());
}

TEST(PolyIo, ErrorsCarryColumn) {
    try {
        parse_poly("x0 + * x1", 2, Q);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 6);
    }
    EXPECT_THROW(parse_poly("x5", 3, Q), ParseError);
    EXPECT_THROW(parse_poly("t*x0", 1, Q), ParseError);
}
