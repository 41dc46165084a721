#include "twistcert/rational_function.hpp"

#include "twistcert/errors.hpp"

namespace twistcert {

namespace {

MultiPoly one_poly(int nvars, const FieldSpec* field) {
    return MultiPoly::constant(nvars, Scalar::one(field), field);
}

bool is_zero_exponent(const Exponent& e) {
    for (auto v : e)
        if (v) return false;
    return true;
}

Exponent min_exponent(const Exponent& a, const Exponent& b) {
    Exponent r{};
    for (int i = 0; i < kMaxVars; ++i) r[i] = std::min(a[i], b[i]);
    return r;
}

// Same support, proportional coefficients: returns a / b as a scalar.
std::optional<Scalar> scalar_ratio(const MultiPoly& a, const MultiPoly& b) {
    if (a.size() != b.size() || a.is_zero()) return std::nullopt;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    if (ia->first != ib->first) return std::nullopt;
    const Scalar r = ia->second / ib->second;
    for (; ia != a.terms().end(); ++ia, ++ib) {
        if (ia->first != ib->first) return std::nullopt;
        if (ia->second != r * ib->second) return std::nullopt;
    }
    return r;
}

} // namespace

RationalFunction::RationalFunction(int nvars, const FieldSpec* field)
    : num_(nvars, field), den_(one_poly(nvars, field)) {}

RationalFunction::RationalFunction(MultiPoly num)
    : num_(std::move(num)), den_(one_poly(num_.nvars(), num_.field())) {}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw UsageError("rational function with zero denominator");
    if (num_.nvars() != den_.nvars() || num_.field() != den_.field())
        throw UsageError("numerator and denominator live in different rings");
    normalize();
}

RationalFunction RationalFunction::constant(int nvars, const Scalar& c, const FieldSpec* field) {
    return RationalFunction(MultiPoly::constant(nvars, c, field));
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = one_poly(num_.nvars(), num_.field());
        return;
    }
    if (den_.is_constant()) {
        if (!den_.leading_coefficient().is_one()) {
            num_ *= den_.leading_coefficient().inverse();
            den_ = one_poly(num_.nvars(), num_.field());
        }
        return;
    }
    const Exponent common = min_exponent(num_.monomial_content(), den_.monomial_content());
    if (!is_zero_exponent(common)) {
        num_ = num_.divide_by_monomial(common);
        den_ = den_.divide_by_monomial(common);
    }
    if (auto r = scalar_ratio(num_, den_)) {
        num_ = MultiPoly::constant(num_.nvars(), *r, num_.field());
        den_ = one_poly(num_.nvars(), num_.field());
        return;
    }
    const Scalar lc = den_.leading_coefficient();
    if (!lc.is_one()) {
        const Scalar inv = lc.inverse();
        num_ *= inv;
        den_ *= inv;
    }
}

bool RationalFunction::is_constant() const { return num_.is_constant() && den_.is_constant(); }

std::optional<int> RationalFunction::homogeneous_degree() const {
    if (is_zero()) throw UsageError("the zero function has no degree");
    const auto dn = num_.homogeneous_degree();
    const auto dd = den_.homogeneous_degree();
    if (!dn || !dd) return std::nullopt;
    return *dn - *dd;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& other) {
    if (other.is_zero()) return *this;
    if (is_zero()) return *this = other;
    if (den_ == other.den_) {
        num_ += other.num_;
    } else if (other.den_.is_constant()) {
        num_ += other.num_ * den_;
    } else if (den_.is_constant()) {
        num_ = num_ * other.den_ + other.num_;
        den_ = other.den_;
    } else if (auto q = den_.divide_exact(other.den_)) {
        num_ += other.num_ * *q;
    } else if (auto q2 = other.den_.divide_exact(den_)) {
        num_ = num_ * *q2 + other.num_;
        den_ = other.den_;
    } else {
        num_ = num_ * other.den_ + other.num_ * den_;
        den_ = den_ * other.den_;
    }
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& other) { return *this += -other; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& other) {
    if (is_zero()) return *this;
    if (other.is_zero()) {
        num_ = MultiPoly(num_.nvars(), num_.field());
        den_ = one_poly(num_.nvars(), num_.field());
        return *this;
    }
    // Cheap cancellations of identical factors.
    if (num_ == other.den_) {
        num_ = other.num_;
    } else if (den_ == other.num_) {
        den_ = other.den_;
    } else {
        num_ = num_ * other.num_;
        if (!other.den_.is_constant() || !other.den_.leading_coefficient().is_one()) den_ = den_ * other.den_;
    }
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& other) { return *this *= other.inverse(); }

RationalFunction& RationalFunction::operator*=(const Scalar& c) {
    num_ *= c;
    if (num_.is_zero()) den_ = one_poly(num_.nvars(), num_.field());
    return *this;
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw UsageError("inverse of the zero rational function");
    return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(unsigned exponent) const {
    RationalFunction r = *this;
    r.num_ = num_.pow(exponent);
    r.den_ = den_.pow(exponent);
    return r;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
    if (a.num_.nvars() != b.num_.nvars()) return false;
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
}

RationalFunction RationalFunction::derivative(int var) const {
    if (den_.is_constant()) return RationalFunction(num_.derivative(var));
    MultiPoly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    return RationalFunction(std::move(n), den_ * den_);
}

Scalar RationalFunction::evaluate(std::span<const Scalar> point) const {
    const Scalar d = den_.evaluate(point);
    if (d.is_zero()) throw PoleError("denominator " + den_.to_string() + " vanishes at the evaluation point");
    return num_.evaluate(point) / d;
}

std::string RationalFunction::to_string() const {
    if (den_.is_constant()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RationalFunction compose(const MultiPoly& f, std::span<const RationalFunction> values) {
    if (static_cast<int>(values.size()) != f.nvars())
        throw UsageError("composition needs one value per variable");
    if (values.empty()) return RationalFunction(f);
    const int nv = values.front().nvars();
    const FieldSpec* field = values.front().field();
    std::vector<std::vector<RationalFunction>> powers(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        powers[i].push_back(RationalFunction::constant(nv, Scalar::one(field), field));
    RationalFunction acc(nv, field);
    for (const auto& [e, c] : f.terms()) {
        RationalFunction t = RationalFunction::constant(nv, c, field);
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (e[i] == 0) continue;
            while (powers[i].size() <= e[i]) powers[i].push_back(powers[i].back() * values[i]);
            t *= powers[i][e[i]];
        }
        acc += t;
    }
    return acc;
}

RationalFunction compose(const RationalFunction& f, std::span<const RationalFunction> values) {
    return compose(f.num(), values) / compose(f.den(), values);
}

std::optional<int> homogeneous_degree(const RationalFunction& f) { return f.homogeneous_degree(); }

Scalar evaluate(const MultiPoly& f, std::span<const Scalar> point) { return f.evaluate(point); }

Scalar evaluate(const RationalFunction& f, std::span<const Scalar> point) { return f.evaluate(point); }

} // namespace twistcert
