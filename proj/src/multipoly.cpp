#include "twistcert/multipoly.hpp"

#include "twistcert/errors.hpp"

#include <algorithm>

namespace twistcert {

int total_degree(const Exponent& e) {
    int d = 0;
    for (auto v : e) d += v;
    return d;
}

bool GrlexGreater::operator()(const Exponent& a, const Exponent& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
}

namespace {

Exponent add_exponents(const Exponent& a, const Exponent& b) {
    Exponent r{};
    for (int i = 0; i < kMaxVars; ++i) {
        const unsigned v = static_cast<unsigned>(a[i]) + b[i];
        if (v > 0xFFFFu) throw UsageError("exponent overflow");
        r[i] = static_cast<std::uint16_t>(v);
    }
    return r;
}

bool divides(const Exponent& a, const Exponent& b) {
    for (int i = 0; i < kMaxVars; ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponent sub_exponents(const Exponent& b, const Exponent& a) {
    Exponent r{};
    for (int i = 0; i < kMaxVars; ++i) r[i] = static_cast<std::uint16_t>(b[i] - a[i]);
    return r;
}

std::string monomial_string(const Exponent& e, int nvars) {
    std::string out;
    for (int i = 0; i < nvars; ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(i);
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
}

} // namespace

MultiPoly::MultiPoly(int nvars, const FieldSpec* field) : nvars_(nvars), field_(field) {
    if (nvars < 0 || nvars > kMaxVars)
        throw UsageError("number of variables must be in [0, " + std::to_string(kMaxVars) + "]");
}

MultiPoly MultiPoly::constant(int nvars, const Scalar& c, const FieldSpec* field) {
    MultiPoly p(nvars, field);
    p.add_term(Exponent{}, c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int index, const FieldSpec* field) {
    if (index < 0 || index >= nvars) throw UsageError("variable index out of range");
    Exponent e{};
    e[index] = 1;
    return monomial(nvars, e, Scalar::one(field), field);
}

MultiPoly MultiPoly::monomial(int nvars, const Exponent& e, const Scalar& c, const FieldSpec* field) {
    MultiPoly p(nvars, field);
    for (int i = nvars; i < kMaxVars; ++i)
        if (e[i] != 0) throw UsageError("exponent uses a variable beyond nvars");
    p.add_term(e, c);
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && twistcert::total_degree(terms_.begin()->first) == 0);
}

Scalar MultiPoly::constant_term() const { return coefficient(Exponent{}); }

Scalar MultiPoly::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

int MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    return twistcert::total_degree(terms_.begin()->first);
}

std::optional<int> MultiPoly::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    const int d = twistcert::total_degree(terms_.begin()->first);
    if (twistcert::total_degree(terms_.rbegin()->first) != d) return std::nullopt;
    return d;
}

int MultiPoly::degree_in(int var) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [e, c] : terms_) d = std::max<int>(d, e[var]);
    return d;
}

const Exponent& MultiPoly::leading_exponent() const {
    if (terms_.empty()) throw UsageError("zero polynomial has no leading term");
    return terms_.begin()->first;
}

const Scalar& MultiPoly::leading_coefficient() const {
    if (terms_.empty()) throw UsageError("zero polynomial has no leading term");
    return terms_.begin()->second;
}

void MultiPoly::add_term(const Exponent& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) {
        if (it->second.field() != field_) it->second = it->second.in_field(field_);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void MultiPoly::check_compatible(const MultiPoly& other) const {
    if (nvars_ != other.nvars_)
        throw UsageError("polynomials have different variable counts (" + std::to_string(nvars_) +
                         " vs " + std::to_string(other.nvars_) + ")");
    if (field_ != other.field_)
        throw UsageError("polynomials are over different fields (" + field_->to_string() + " vs " +
                         other.field_->to_string() + ")");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
    check_compatible(other);
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
    check_compatible(other);
    if (&other == this) {
        terms_.clear();
        return *this;
    }
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly r(a.nvars_, a.field_);
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            const Exponent e = add_exponents(ea, eb);
            auto [it, inserted] = r.terms_.try_emplace(e, ca);
            if (inserted) {
                it->second *= cb;
            } else {
                it->second += ca * cb;
            }
        }
    }
    std::erase_if(r.terms_, [](const auto& kv) { return kv.second.is_zero(); });
    return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) {
    *this = *this * other;
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
    MultiPoly result = constant(nvars_, Scalar::one(field_), field_);
    MultiPoly base = *this;
    while (exponent) {
        if (exponent & 1u) result *= base;
        exponent >>= 1u;
        if (exponent) base = base * base;
    }
    return result;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

MultiPoly MultiPoly::derivative(int var) const {
    if (var < 0 || var >= nvars_) throw UsageError("derivative variable index out of range");
    MultiPoly r(nvars_, field_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent d = e;
        --d[var];
        r.terms_.emplace(d, c * Scalar(static_cast<long>(e[var])));
    }
    return r;
}

Scalar MultiPoly::evaluate(std::span<const Scalar> point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw UsageError("evaluation point has " + std::to_string(point.size()) +
                         " coordinates, expected " + std::to_string(nvars_));
    // Cache powers per variable.
    std::vector<std::vector<Scalar>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i) powers[i].push_back(Scalar::one(field_));
    Scalar acc = Scalar::zero(field_);
    for (const auto& [e, c] : terms_) {
        Scalar t = c;
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            while (static_cast<int>(powers[i].size()) <= e[i])
                powers[i].push_back(powers[i].back() * point[i]);
            t *= powers[i][e[i]];
        }
        acc += t;
    }
    return acc;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& divisor) const {
    check_compatible(divisor);
    if (divisor.is_zero()) throw UsageError("division by the zero polynomial");
    MultiPoly q(nvars_, field_);
    if (is_zero()) return q;
    if (divisor.is_constant()) {
        MultiPoly r = *this;
        r *= divisor.leading_coefficient().inverse();
        return r;
    }
    const Exponent& lt = divisor.leading_exponent();
    const Scalar lc_inv = divisor.leading_coefficient().inverse();
    MultiPoly r = *this;
    while (!r.is_zero()) {
        const Exponent& le = r.leading_exponent();
        if (!divides(lt, le)) return std::nullopt;
        const Exponent qe = sub_exponents(le, lt);
        const Scalar qc = r.leading_coefficient() * lc_inv;
        q.terms_.emplace(qe, qc);
        for (const auto& [e, c] : divisor.terms_) r.add_term(add_exponents(qe, e), -(qc * c));
    }
    return q;
}

Exponent MultiPoly::monomial_content() const {
    if (terms_.empty()) return Exponent{};
    Exponent m = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
        for (int i = 0; i < kMaxVars; ++i) m[i] = std::min(m[i], e[i]);
    return m;
}

MultiPoly MultiPoly::divide_by_monomial(const Exponent& e) const {
    MultiPoly r(nvars_, field_);
    for (const auto& [te, c] : terms_) {
        if (!divides(e, te)) throw UsageError("monomial does not divide the polynomial");
        r.terms_.emplace_hint(r.terms_.end(), sub_exponents(te, e), c);
    }
    return r;
}

MultiPoly MultiPoly::with_nvars(int nvars) const {
    MultiPoly r(nvars, field_);
    for (const auto& [e, c] : terms_) {
        for (int i = nvars; i < kMaxVars; ++i)
            if (e[i] != 0) throw UsageError("variable x" + std::to_string(i) + " occurs; cannot drop it");
        r.terms_.emplace(e, c);
    }
    return r;
}

MultiPoly MultiPoly::in_field(const FieldSpec* field) const {
    MultiPoly r(nvars_, field);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.in_field(field));
    return r;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        const std::string mono = monomial_string(e, nvars_);
        int nonzero = 0;
        int power = 0;
        for (std::size_t k = 0; k < c.coefficients().size(); ++k)
            if (c.coefficients()[k] != 0) {
                ++nonzero;
                power = static_cast<int>(k);
            }
        std::string body;
        bool negative = false;
        if (nonzero == 1) {
            const mpq_class& r = c.coefficients()[power];
            negative = sgn(r) < 0;
            const mpq_class a = abs(r);
            std::string tpart = power == 0 ? "" : (power == 1 ? "t" : "t^" + std::to_string(power));
            std::string rest = tpart;
            if (!mono.empty()) rest += (rest.empty() ? "" : "*") + mono;
            if (rest.empty()) body = a.get_str();
            else if (a == 1) body = rest;
            else body = a.get_str() + "*" + rest;
        } else {
            body = "(" + c.to_string() + ")";
            if (!mono.empty()) body += "*" + mono;
        }
        if (out.empty()) out = (negative ? "-" : "") + body;
        else out += (negative ? "-" : "+") + body;
    }
    return out;
}

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op) {
    switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
    }
    throw UsageError("unknown polynomial operation");
}

MultiPoly partial_derivative(const MultiPoly& f, int var) { return f.derivative(var); }

} // namespace twistcert
