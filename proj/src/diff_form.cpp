#include "twistcert/diff_form.hpp"

#include "twistcert/errors.hpp"
#include "twistcert/matrix.hpp"
#include "twistcert/poly_io.hpp"

#include <bit>
#include <cctype>

namespace twistcert {

std::vector<int> mask_indices(FormMask mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

FormMask indices_mask(std::span<const int> indices) {
    FormMask m = 0;
    for (int i : indices) m |= FormMask{1} << i;
    return m;
}

bool MaskLex::operator()(FormMask a, FormMask b) const {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    // At the first differing index the smaller tuple holds the lower bit.
    const FormMask diff = a ^ b;
    if (!diff) return false;
    return (a & diff & (~diff + 1)) != 0;
}

int wedge_sign(FormMask a, FormMask b) {
    // Count pairs (i in a, j in b) with i > j.
    int inversions = 0;
    for (FormMask rest = b; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        inversions += std::popcount(a >> (j + 1));
    }
    return inversions % 2 ? -1 : 1;
}

DiffForm::DiffForm(int nvars, int degree, const FieldSpec* field) : nvars_(nvars), degree_(degree), field_(field) {
    if (nvars < 0 || nvars > kMaxVars) throw UsageError("number of variables out of range");
    if (degree < 0) throw UsageError("negative form degree");
}

DiffForm DiffForm::function(const RationalFunction& f) {
    DiffForm w(f.nvars(), 0, f.field());
    w.add_term(FormMask{0}, f);
    return w;
}

DiffForm DiffForm::dx(int nvars, int index, const FieldSpec* field) {
    if (index < 0 || index >= nvars) throw UsageError("differential index out of range");
    DiffForm w(nvars, 1, field);
    w.add_term(FormMask{1} << index, RationalFunction::constant(nvars, Scalar::one(field), field));
    return w;
}

DiffForm DiffForm::monomial(int nvars, std::span<const int> indices, const RationalFunction& coeff) {
    DiffForm w(nvars, static_cast<int>(indices.size()), coeff.field());
    w.add_term(indices, coeff);
    return w;
}

RationalFunction DiffForm::coefficient(FormMask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? RationalFunction(nvars_, field_) : it->second;
}

RationalFunction DiffForm::coefficient(std::span<const int> indices) const {
    return coefficient(indices_mask(indices));
}

void DiffForm::add_term(std::span<const int> indices, const RationalFunction& c) {
    if (static_cast<int>(indices.size()) != degree_) throw UsageError("term degree does not match the form");
    FormMask mask = 0;
    int sign = 1;
    for (int i : indices) {
        if (i < 0 || i >= nvars_) throw UsageError("differential index out of range");
        const FormMask bit = FormMask{1} << i;
        if (mask & bit) return;
        sign *= wedge_sign(mask, bit);
        mask |= bit;
    }
    add_term(mask, sign > 0 ? c : -c);
}

void DiffForm::add_term(FormMask mask, const RationalFunction& c) {
    if (std::popcount(mask) != degree_) throw UsageError("term degree does not match the form");
    if (c.nvars() != nvars_) throw UsageError("coefficient has the wrong variable count");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(mask, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void DiffForm::check_compatible(const DiffForm& other) const {
    if (nvars_ != other.nvars_) throw UsageError("forms have different variable counts");
    if (field_ != other.field_) throw UsageError("forms are over different fields");
}

DiffForm DiffForm::operator-() const {
    DiffForm r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

DiffForm& DiffForm::operator+=(const DiffForm& other) {
    check_compatible(other);
    if (other.is_zero()) return *this;
    if (is_zero()) return *this = other;
    if (degree_ != other.degree_) throw UsageError("adding forms of different degrees");
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

DiffForm& DiffForm::operator-=(const DiffForm& other) { return *this += -other; }

DiffForm& DiffForm::operator*=(const RationalFunction& f) {
    if (f.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= f;
    return *this;
}

DiffForm& DiffForm::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

bool operator==(const DiffForm& a, const DiffForm& b) {
    if (a.nvars_ != b.nvars_) return false;
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.degree_ != b.degree_ || a.terms_.size() != b.terms_.size()) return false;
    for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
}

std::string DiffForm::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")";
        bool first = true;
        for (int i : mask_indices(m)) {
            out += first ? "*" : "^";
            out += "dx" + std::to_string(i);
            first = false;
        }
    }
    return out;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    if (a.nvars() != b.nvars()) throw UsageError("forms have different variable counts");
    DiffForm r(a.nvars(), a.degree() + b.degree(), a.field());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            if (ma & mb) continue;
            const RationalFunction c = ca * cb;
            r.add_term(ma | mb, wedge_sign(ma, mb) > 0 ? c : -c);
        }
    return r;
}

DiffForm wedge(std::span<const DiffForm> forms) {
    if (forms.empty()) throw UsageError("empty wedge product");
    DiffForm acc = forms.front();
    for (std::size_t i = 1; i < forms.size(); ++i) acc = wedge(acc, forms[i]);
    return acc;
}

DiffForm exterior_derivative(const DiffForm& w) {
    DiffForm r(w.nvars(), w.degree() + 1, w.field());
    for (const auto& [m, c] : w.terms())
        for (int j = 0; j < w.nvars(); ++j) {
            const FormMask bit = FormMask{1} << j;
            if (m & bit) continue;
            const RationalFunction dc = c.derivative(j);
            if (dc.is_zero()) continue;
            r.add_term(bit | m, wedge_sign(bit, m) > 0 ? dc : -dc);
        }
    return r;
}

DiffForm dlog(const RationalFunction& f) {
    if (f.is_zero()) throw UsageError("dlog of the zero function");
    DiffForm r(f.nvars(), 1, f.field());
    // df/f = dnum/num - dden/den, each term in lowest available form.
    for (int j = 0; j < f.nvars(); ++j) {
        RationalFunction c = RationalFunction(f.num().derivative(j), f.num());
        if (!f.den().is_constant()) c -= RationalFunction(f.den().derivative(j), f.den());
        r.add_term(FormMask{1} << j, c);
    }
    return r;
}

DiffForm der_bracket(std::span<const DiffForm> forms) {
    const std::size_t p = forms.size();
    if (p < 2) throw UsageError("the derivation bracket needs at least two forms");
    for (const auto& w : forms) {
        if (w.nvars() != forms.front().nvars()) throw UsageError("forms have different variable counts");
        if (w.degree() != 1 && !w.is_zero()) throw UsageError("the derivation bracket takes 1-forms");
    }
    const int nv = forms.front().nvars();
    const FieldSpec* field = forms.front().field();
    // prefix[k] = w_1 ^ .. ^ w_k, suffix[k] = w_{k+1} ^ .. ^ w_p (0-based k).
    std::vector<DiffForm> prefix(p + 1), suffix(p + 1);
    prefix[0] = DiffForm::function(RationalFunction::constant(nv, Scalar::one(field), field));
    suffix[p] = prefix[0];
    for (std::size_t k = 0; k < p; ++k) prefix[k + 1] = wedge(prefix[k], forms[k]);
    for (std::size_t k = p; k-- > 0;) suffix[k] = wedge(forms[k], suffix[k + 1]);
    DiffForm acc(nv, static_cast<int>(p) - 1, field);
    for (std::size_t k = 0; k < p; ++k) {
        const DiffForm t = wedge(prefix[k], suffix[k + 1]);
        if (k % 2) acc -= t;
        else acc += t;
    }
    return acc;
}

DiffForm euler_contraction(const DiffForm& w) {
    if (w.degree() == 0) return DiffForm(w.nvars(), 0, w.field());
    DiffForm r(w.nvars(), w.degree() - 1, w.field());
    for (const auto& [m, c] : w.terms()) {
        int k = 0;
        for (int i : mask_indices(m)) {
            const RationalFunction t = c * RationalFunction(MultiPoly::variable(w.nvars(), i, w.field()));
            r.add_term(m & ~(FormMask{1} << i), k % 2 ? -t : t);
            ++k;
        }
    }
    return r;
}

DiffForm pullback(const DiffForm& w, std::span<const RationalFunction> phi) {
    if (static_cast<int>(phi.size()) != w.nvars()) throw UsageError("pullback needs one function per variable");
    if (phi.empty()) return w;
    const int nv = phi.front().nvars();
    const FieldSpec* field = phi.front().field();
    std::vector<DiffForm> dphi;
    dphi.reserve(phi.size());
    for (const auto& f : phi) dphi.push_back(exterior_derivative(DiffForm::function(f)));
    DiffForm r(nv, w.degree(), field);
    for (const auto& [m, c] : w.terms()) {
        DiffForm t = DiffForm::function(compose(c, phi));
        for (int i : mask_indices(m)) t = wedge(t, dphi[i]);
        r += t;
    }
    return r;
}

LogDependence log_dependence(std::span<const RationalFunction> fs) {
    const std::size_t p = fs.size();
    if (p < 2) throw UsageError("log_dependence needs at least two functions");
    const int nv = fs.front().nvars();
    const FieldSpec* field = fs.front().field();
    std::vector<DiffForm> omegas;
    for (const auto& f : fs) {
        if (f.nvars() != nv || f.field() != field) throw UsageError("functions live in different rings");
        if (f.is_zero() || f.is_constant()) throw UsageError("log_dependence requires non-constant functions");
        omegas.push_back(dlog(f));
    }
    Matrix stacked(nv + 1, p, nv, field);
    Matrix coeffs(nv, p, nv, field);
    for (std::size_t i = 0; i < p; ++i) {
        stacked(0, i) = RationalFunction::constant(nv, Scalar::one(field), field);
        for (int j = 0; j < nv; ++j) {
            const RationalFunction c = omegas[i].coefficient(FormMask{1} << j);
            stacked(j + 1, i) = c;
            coeffs(j, i) = c;
        }
    }
    LogDependence out;
    const auto s = rank_kernel_det(stacked);
    out.bracket_zero = s.rank < p;
    if (!s.kernel.empty()) out.witness = s.kernel.front();
    out.wedge_zero = rank_kernel_det(coeffs).rank < p;
    return out;
}

namespace {

// Splits at top-level occurrences of " + ".
std::vector<std::pair<std::size_t, std::string_view>> split_terms(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        else if (text[i] == ')') --depth;
        else if (depth == 0 && text.compare(i, 3, " + ") == 0) {
            out.emplace_back(start, text.substr(start, i - start));
            start = i + 3;
            i += 2;
        }
    }
    out.emplace_back(start, text.substr(start));
    return out;
}

} // namespace

DiffForm parse_form(std::string_view text, int nvars, int degree, const FieldSpec* field) {
    DiffForm w(nvars, degree, field);
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    if (text.substr(b, e - b) == "0") return w;
    for (auto [offset, term] : split_terms(text.substr(b, e - b))) {
        offset += b;
        if (term.empty() || term.front() != '(') throw ParseError("form term must start with '('", 1, offset + 1);
        int depth = 0;
        std::size_t close = std::string_view::npos;
        for (std::size_t i = 0; i < term.size(); ++i) {
            if (term[i] == '(') ++depth;
            if (term[i] == ')' && --depth == 0) {
                close = i;
                break;
            }
        }
        if (close == std::string_view::npos) throw ParseError("unbalanced parenthesis", 1, offset + 1);
        RationalFunction c;
        try {
            c = parse_rational_function(term.substr(1, close - 1), nvars, field);
        } catch (const ParseError& err) {
            const std::string msg = err.what();
            throw ParseError(msg.substr(0, msg.rfind(" (line")), 1, err.column() + offset + 1);
        }
        std::vector<int> idx;
        std::size_t pos = close + 1;
        while (pos < term.size()) {
            const char sep = term[pos];
            if (sep != (idx.empty() ? '*' : '^') || term.compare(pos + 1, 2, "dx") != 0)
                throw ParseError("expected a differential dx<i>", 1, offset + pos + 1);
            pos += 3;
            const std::size_t digits = pos;
            while (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos]))) ++pos;
            if (pos == digits) throw ParseError("missing differential index", 1, offset + pos + 1);
            const int i = std::stoi(std::string(term.substr(digits, pos - digits)));
            if (i >= nvars) throw ParseError("differential index out of range", 1, offset + digits + 1);
            idx.push_back(i);
        }
        if (static_cast<int>(idx.size()) != degree)
            throw ParseError("term has the wrong degree", 1, offset + 1);
        w.add_term(idx, c);
    }
    return w;
}

} // namespace twistcert
