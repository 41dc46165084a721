#include "twistcert/scalar.hpp"

#include "twistcert/errors.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

namespace twistcert {

namespace {

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::vector<std::unique_ptr<FieldSpec>>& registry() {
    static std::vector<std::unique_ptr<FieldSpec>> fields;
    return fields;
}

bool is_rational_square(const mpq_class& q) {
    if (sgn(q) < 0) return false;
    return mpz_perfect_square_p(q.get_num_mpz_t()) != 0 &&
           mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

mpz_class lcm_of_denominators(const std::vector<mpq_class>& coeffs) {
    mpz_class l = 1;
    for (const auto& c : coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    return l;
}

// All positive divisors of |n| for |n| <= 10^12.
std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    if (n > mpz_class("1000000000000"))
        throw UsageError("minimal polynomial coefficients too large for the irreducibility test");
    std::vector<std::pair<mpz_class, unsigned>> factors;
    for (mpz_class p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) factors.emplace_back(p, e);
    }
    if (n > 1) factors.emplace_back(n, 1);
    std::vector<mpz_class> out{1};
    for (const auto& [p, e] : factors) {
        const std::size_t base = out.size();
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

} // namespace

bool is_irreducible_low_degree(const std::vector<mpq_class>& monic) {
    const int deg = static_cast<int>(monic.size()) - 1;
    if (deg != 2 && deg != 3) throw UsageError("only degree 2 and 3 extensions are supported");
    if (monic.back() != 1) throw UsageError("minimal polynomial must be monic");
    if (deg == 2) {
        const mpq_class disc = monic[1] * monic[1] - 4 * monic[0];
        return !is_rational_square(disc);
    }
    // Substituting t = u / D gives a monic integer cubic in u; rational roots
    // of that are integers dividing its constant term.
    const mpz_class D = lcm_of_denominators(monic);
    std::vector<mpz_class> c(4);
    mpz_class scale = 1;
    for (int k = 3; k >= 0; --k) {
        const mpq_class v = monic[k] * mpq_class(scale);
        c[k] = v.get_num();
        if (v.get_den() != 1) throw std::logic_error("cubic normalization failed");
        scale *= D;
    }
    if (c[0] == 0) return false;
    for (const auto& r : divisors(c[0])) {
        for (int sign : {1, -1}) {
            const mpz_class u = r * sign;
            if (((u + c[2]) * u + c[1]) * u + c[0] == 0) return false;
        }
    }
    return true;
}

const FieldSpec* FieldSpec::rationals() {
    static const FieldSpec* q = [] {
        auto* f = new FieldSpec();
        f->degree_ = 1;
        f->powers_ = {{mpq_class(1)}};
        return f;
    }();
    return q;
}

const FieldSpec* FieldSpec::extension(const std::vector<mpq_class>& minimal_poly) {
    std::vector<mpq_class> m = minimal_poly;
    for (auto& c : m) c.canonicalize();
    while (!m.empty() && m.back() == 0) m.pop_back();
    if (m.size() < 3) throw UsageError("minimal polynomial must have degree >= 2");
    if (m.size() > 4) throw UsageError("extensions of degree > 3 are not supported");
    if (m.back() != 1) throw UsageError("minimal polynomial must be monic");
    if (!is_irreducible_low_degree(m)) throw UsageError("minimal polynomial is reducible over Q");

    std::lock_guard lock(registry_mutex());
    for (const auto& f : registry())
        if (f->minimal_poly_ == m) return f.get();

    auto f = std::unique_ptr<FieldSpec>(new FieldSpec());
    const int deg = static_cast<int>(m.size()) - 1;
    f->degree_ = deg;
    f->minimal_poly_ = m;
    f->powers_.resize(2 * deg - 1);
    for (int k = 0; k < deg; ++k) {
        f->powers_[k].assign(deg, mpq_class(0));
        f->powers_[k][k] = 1;
    }
    for (int k = deg; k < 2 * deg - 1; ++k) {
        // t^k = t * t^(k-1); t^deg = -(m_0 + ... + m_{deg-1} t^{deg-1}).
        const auto& prev = f->powers_[k - 1];
        std::vector<mpq_class> next(deg, mpq_class(0));
        for (int j = 0; j + 1 < deg; ++j) next[j + 1] = prev[j];
        const mpq_class top = prev[deg - 1];
        if (top != 0)
            for (int j = 0; j < deg; ++j) next[j] -= top * m[j];
        f->powers_[k] = std::move(next);
    }
    registry().push_back(std::move(f));
    return registry().back().get();
}

std::string FieldSpec::to_string() const {
    if (is_rationals()) return "Q";
    std::string out;
    for (int k = degree_; k >= 0; --k) {
        const mpq_class& c = minimal_poly_[k];
        if (c == 0) continue;
        std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
        const mpq_class a = abs(c);
        std::string body;
        if (mono.empty()) body = a.get_str();
        else if (a == 1) body = mono;
        else body = a.get_str() + "*" + mono;
        if (out.empty()) out = (sgn(c) < 0 ? "-" : "") + body;
        else out += (sgn(c) < 0 ? "-" : "+") + body;
    }
    return out;
}

Scalar::Scalar() : field_(FieldSpec::rationals()), coeffs_{mpq_class(0)} {}

Scalar::Scalar(long value) : field_(FieldSpec::rationals()), coeffs_{mpq_class(value)} {}

Scalar::Scalar(const mpq_class& value, const FieldSpec* field)
    : field_(field), coeffs_(field->degree(), mpq_class(0)) {
    coeffs_[0] = value;
    coeffs_[0].canonicalize();
}

Scalar Scalar::from_coefficients(std::vector<mpq_class> coeffs, const FieldSpec* field) {
    Scalar s(mpq_class(0), field);
    const int deg = field->degree();
    for (auto& c : coeffs) c.canonicalize();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        if (static_cast<int>(k) < deg) {
            s.coeffs_[k] += coeffs[k];
            continue;
        }
        if (static_cast<int>(k) > 2 * deg - 2) {
            // Higher powers: fold repeatedly through t^k = t^(k-deg) * t^deg.
            Scalar tk = generator(field).pow(static_cast<unsigned>(k));
            for (int j = 0; j < deg; ++j) s.coeffs_[j] += coeffs[k] * tk.coeffs_[j];
            continue;
        }
        const auto& red = field->power_of_generator(static_cast<int>(k));
        for (int j = 0; j < deg; ++j) s.coeffs_[j] += coeffs[k] * red[j];
    }
    return s;
}

Scalar Scalar::generator(const FieldSpec* field) {
    if (field->is_rationals()) throw UsageError("Q has no extension generator t");
    Scalar s(mpq_class(0), field);
    s.coeffs_[1] = 1;
    return s;
}

bool Scalar::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return c == 0; });
}

bool Scalar::is_one() const {
    if (coeffs_[0] != 1) return false;
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const mpq_class& c) { return c == 0; });
}

bool Scalar::is_rational() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const mpq_class& c) { return c == 0; });
}

std::optional<mpq_class> Scalar::as_rational() const {
    if (!is_rational()) return std::nullopt;
    return coeffs_[0];
}

bool Scalar::is_integer() const { return is_rational() && coeffs_[0].get_den() == 1; }

Scalar Scalar::in_field(const FieldSpec* target) const {
    Scalar s = *this;
    s.promote(target);
    return s;
}

void Scalar::promote(const FieldSpec* target) {
    if (field_ == target) return;
    if (!field_->is_rationals())
        throw UsageError("cannot move a scalar between distinct extension fields");
    field_ = target;
    coeffs_.resize(target->degree(), mpq_class(0));
}

const FieldSpec* Scalar::common_field(const Scalar& a, const Scalar& b) {
    if (a.field_ == b.field_) return a.field_;
    if (a.field_->is_rationals()) return b.field_;
    if (b.field_->is_rationals()) return a.field_;
    throw UsageError("scalars from different extension fields: " + a.field_->to_string() + " vs " +
                     b.field_->to_string());
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    for (auto& c : s.coeffs_) c = -c;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& other) {
    const FieldSpec* f = common_field(*this, other);
    promote(f);
    if (other.field_ == f) {
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    } else {
        coeffs_[0] += other.coeffs_[0];
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
    const FieldSpec* f = common_field(*this, other);
    promote(f);
    if (other.field_ == f) {
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    } else {
        coeffs_[0] -= other.coeffs_[0];
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
    const FieldSpec* f = common_field(*this, other);
    if (other.is_rational()) {
        promote(f);
        const mpq_class r = other.coeffs_[0];
        for (auto& c : coeffs_) c *= r;
        return *this;
    }
    if (is_rational()) {
        const mpq_class r = coeffs_[0];
        *this = other;
        for (auto& c : coeffs_) c *= r;
        return *this;
    }
    const int deg = f->degree();
    std::vector<mpq_class> prod(2 * deg - 1, mpq_class(0));
    for (int i = 0; i < deg; ++i) {
        if (coeffs_[i] == 0) continue;
        for (int j = 0; j < deg; ++j) prod[i + j] += coeffs_[i] * other.coeffs_[j];
    }
    std::vector<mpq_class> out(deg, mpq_class(0));
    for (int k = 0; k < 2 * deg - 1; ++k) {
        if (prod[k] == 0) continue;
        if (k < deg) {
            out[k] += prod[k];
        } else {
            const auto& red = f->power_of_generator(k);
            for (int j = 0; j < deg; ++j) out[j] += prod[k] * red[j];
        }
    }
    field_ = f;
    coeffs_ = std::move(out);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) { return *this *= other.inverse(); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw UsageError("division by zero scalar");
    if (is_rational()) {
        Scalar s = *this;
        s.coeffs_[0] = 1 / coeffs_[0];
        return s;
    }
    // Solve (multiplication-by-this matrix) * x = e_0.
    const int deg = field_->degree();
    std::vector<std::vector<mpq_class>> a(deg, std::vector<mpq_class>(deg + 1, mpq_class(0)));
    Scalar col = Scalar::one(field_);
    const Scalar t = generator(field_);
    for (int j = 0; j < deg; ++j) {
        const Scalar prod = *this * col;
        for (int i = 0; i < deg; ++i) a[i][j] = prod.coeffs_[i];
        col *= t;
    }
    a[0][deg] = 1;
    for (int c = 0; c < deg; ++c) {
        int p = c;
        while (p < deg && a[p][c] == 0) ++p;
        if (p == deg) throw std::logic_error("singular multiplication matrix in a field");
        std::swap(a[p], a[c]);
        const mpq_class piv = a[c][c];
        for (int j = c; j <= deg; ++j) a[c][j] /= piv;
        for (int i = 0; i < deg; ++i) {
            if (i == c || a[i][c] == 0) continue;
            const mpq_class f = a[i][c];
            for (int j = c; j <= deg; ++j) a[i][j] -= f * a[c][j];
        }
    }
    Scalar s(mpq_class(0), field_);
    for (int i = 0; i < deg; ++i) s.coeffs_[i] = a[i][deg];
    return s;
}

Scalar Scalar::pow(unsigned exponent) const {
    Scalar result = Scalar::one(field_);
    Scalar base = *this;
    while (exponent) {
        if (exponent & 1u) result *= base;
        exponent >>= 1u;
        if (exponent) base *= base;
    }
    return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.field_ == b.field_) return a.coeffs_ == b.coeffs_;
    const FieldSpec* f = Scalar::common_field(a, b);
    return a.in_field(f).coeffs_ == b.in_field(f).coeffs_;
}

std::string Scalar::to_string() const {
    std::string out;
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
        const mpq_class& c = coeffs_[k];
        if (c == 0) continue;
        const std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
        const mpq_class a = abs(c);
        std::string body;
        if (mono.empty()) body = a.get_str();
        else if (a == 1) body = mono;
        else body = a.get_str() + "*" + mono;
        if (out.empty()) out = (sgn(c) < 0 ? "-" : "") + body;
        else out += (sgn(c) < 0 ? "-" : "+") + body;
    }
    return out.empty() ? "0" : out;
}

} // namespace twistcert
