#include "twistcert/arrangement.hpp"

#include "twistcert/errors.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace twistcert {

std::string to_string(ArrangementKind kind) {
    switch (kind) {
    case ArrangementKind::affine: return "affine";
    case ArrangementKind::central: return "central";
    case ArrangementKind::projective: return "projective";
    }
    return "?";
}

ArrangementKind parse_arrangement_kind(const std::string& text) {
    if (text == "affine") return ArrangementKind::affine;
    if (text == "central") return ArrangementKind::central;
    if (text == "projective") return ArrangementKind::projective;
    throw UsageError("unknown arrangement kind '" + text + "'");
}

struct Arrangement::Cache {
    std::mutex mutex;
    std::unordered_map<std::uint64_t, int> ranks;
};

namespace {

// Scales (normal, offset) so the first nonzero normal entry is 1.
std::vector<Scalar> normalized(const Hyperplane& h) {
    std::vector<Scalar> v = h.normal;
    v.push_back(h.offset);
    Scalar lead;
    for (const auto& c : h.normal)
        if (!c.is_zero()) {
            lead = c;
            break;
        }
    const Scalar inv = lead.inverse();
    for (auto& c : v) c *= inv;
    return v;
}

} // namespace

Arrangement::Arrangement() : cache_(std::make_shared<Cache>()) {}

Arrangement::Arrangement(int ambient, ArrangementKind kind, std::vector<Hyperplane> hyperplanes,
                         const FieldSpec* field)
    : ambient_(ambient), kind_(kind), hyperplanes_(std::move(hyperplanes)), field_(field),
      cache_(std::make_shared<Cache>()) {
    if (ambient < 0) throw UsageError("negative ambient dimension");
    if (hyperplanes_.size() > 32) throw UsageError("at most 32 hyperplanes are supported");
    std::vector<std::vector<Scalar>> seen;
    for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
        auto& h = hyperplanes_[i];
        if (static_cast<int>(h.normal.size()) != ambient)
            throw UsageError("hyperplane " + std::to_string(i) + " has a normal of the wrong length");
        bool nonzero = false;
        for (auto& c : h.normal) {
            c = c.in_field(field);
            nonzero = nonzero || !c.is_zero();
        }
        h.offset = h.offset.in_field(field);
        if (!nonzero) throw UsageError("hyperplane " + std::to_string(i) + " has a zero normal");
        if (kind != ArrangementKind::affine && !h.offset.is_zero())
            throw UsageError("hyperplane " + std::to_string(i) + " of a central arrangement has a nonzero offset");
        auto key = normalized(h);
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            throw UsageError("hyperplane " + std::to_string(i) + " repeats an earlier one");
        seen.push_back(std::move(key));
    }
}

Arrangement Arrangement::from_linear_forms(std::span<const MultiPoly> forms, ArrangementKind kind) {
    if (forms.empty()) throw UsageError("no linear forms given");
    const int nv = forms.front().nvars();
    const FieldSpec* field = forms.front().field();
    std::vector<Hyperplane> hs;
    for (const auto& f : forms) {
        if (f.nvars() != nv || f.field() != field) throw UsageError("linear forms live in different rings");
        if (f.total_degree() != 1) throw UsageError("'" + f.to_string() + "' is not of degree one");
        Hyperplane h;
        for (int i = 0; i < nv; ++i) {
            Exponent e{};
            e[i] = 1;
            h.normal.push_back(f.coefficient(e));
        }
        h.offset = -f.constant_term();
        hs.push_back(std::move(h));
    }
    return Arrangement(nv, kind, std::move(hs), field);
}

MultiPoly Arrangement::linear_form(std::size_t i) const {
    const auto& h = hyperplanes_.at(i);
    MultiPoly f = MultiPoly::constant(ambient_, -h.offset, field_);
    for (int j = 0; j < ambient_; ++j) f += MultiPoly::variable(ambient_, j, field_) * h.normal[j];
    return f;
}

int Arrangement::cone_rank(HyperplaneSet members, bool with_infinity) const {
    const std::uint64_t key = members | (std::uint64_t{with_infinity} << 32);
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->ranks.find(key);
        if (it != cache_->ranks.end()) return it->second;
    }
    ScalarMatrix m(0, 0, field_);
    for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
        if (!(members >> i & 1u)) continue;
        std::vector<Scalar> row = hyperplanes_[i].normal;
        row.push_back(-hyperplanes_[i].offset);
        m.append_row(row);
    }
    if (with_infinity) {
        std::vector<Scalar> row(ambient_ + 1, Scalar::zero(field_));
        row.back() = Scalar::one(field_);
        m.append_row(row);
    }
    const int r = m.rows() == 0 ? 0 : static_cast<int>(twistcert::rank(m));
    std::lock_guard lock(cache_->mutex);
    cache_->ranks.emplace(key, r);
    return r;
}

int Arrangement::normal_rank(HyperplaneSet members) const {
    const std::uint64_t key = members | (std::uint64_t{1} << 33);
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->ranks.find(key);
        if (it != cache_->ranks.end()) return it->second;
    }
    ScalarMatrix m(0, 0, field_);
    for (std::size_t i = 0; i < hyperplanes_.size(); ++i)
        if (members >> i & 1u) m.append_row(hyperplanes_[i].normal);
    const int r = m.rows() == 0 ? 0 : static_cast<int>(twistcert::rank(m));
    std::lock_guard lock(cache_->mutex);
    cache_->ranks.emplace(key, r);
    return r;
}

int Arrangement::rank_of(HyperplaneSet members) const { return cone_rank(members, false); }

bool Arrangement::intersects(HyperplaneSet members) const {
    if (is_central() || members == 0) return true;
    return cone_rank(members, true) == cone_rank(members, false) + 1;
}

HyperplaneSet Arrangement::closure(HyperplaneSet members) const {
    const int r = cone_rank(members, false);
    HyperplaneSet out = members;
    for (std::size_t i = 0; i < size(); ++i) {
        const HyperplaneSet bit = HyperplaneSet{1} << i;
        if (!(members & bit) && cone_rank(members | bit, false) == r) out |= bit;
    }
    return out;
}

Arrangement Arrangement::subarrangement(HyperplaneSet members) const {
    std::vector<Hyperplane> hs;
    for (std::size_t i = 0; i < size(); ++i)
        if (members >> i & 1u) hs.push_back(hyperplanes_[i]);
    return Arrangement(ambient_, kind_, std::move(hs), field_);
}

std::optional<std::size_t> IntersectionLattice::index_of(HyperplaneSet members) const {
    for (std::size_t i = 0; i < flats.size(); ++i)
        if (flats[i].members == members) return i;
    return std::nullopt;
}

std::vector<std::size_t> IntersectionLattice::rank_counts() const {
    std::vector<std::size_t> out;
    for (const auto& f : flats) {
        if (static_cast<int>(out.size()) <= f.rank) out.resize(f.rank + 1, 0);
        ++out[f.rank];
    }
    return out;
}

std::vector<long long> IntersectionLattice::whitney_numbers() const {
    std::vector<long long> out;
    for (std::size_t i = 0; i < flats.size(); ++i) {
        if (static_cast<int>(out.size()) <= flats[i].rank) out.resize(flats[i].rank + 1, 0);
        out[flats[i].rank] += mobius[i];
    }
    for (auto& v : out) v = v < 0 ? -v : v;
    return out;
}

IntersectionLattice lattice(const Arrangement& a) {
    if (a.size() > kMaxHyperplanes)
        throw UsageError("lattice enumeration is limited to " + std::to_string(kMaxHyperplanes) +
                         " hyperplanes; restrict the arrangement first");
    IntersectionLattice l;
    std::vector<HyperplaneSet> level{0};
    std::unordered_set<HyperplaneSet> seen{0};
    std::vector<HyperplaneSet> all_masks;
    while (!level.empty()) {
        std::sort(level.begin(), level.end());
        all_masks.insert(all_masks.end(), level.begin(), level.end());
        std::vector<HyperplaneSet> next;
        for (HyperplaneSet x : level)
            for (std::size_t i = 0; i < a.size(); ++i) {
                const HyperplaneSet bit = HyperplaneSet{1} << i;
                if (x & bit) continue;
                const HyperplaneSet s = x | bit;
                if (!a.intersects(s)) continue;
                const HyperplaneSet c = a.closure(s);
                if (seen.insert(c).second) next.push_back(c);
            }
        level = std::move(next);
    }

    const FieldSpec* field = a.field();
    for (HyperplaneSet m : all_masks) {
        Flat f;
        f.members = m;
        f.rank = a.rank_of(m);
        f.dim = a.ambient() - f.rank;
        ScalarMatrix normals(0, 0, field);
        std::vector<Scalar> rhs;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (m >> i & 1u) {
                normals.append_row(a.hyperplane(i).normal);
                rhs.push_back(a.hyperplane(i).offset);
            }
        if (normals.rows() == 0) {
            f.point.assign(a.ambient(), Scalar::zero(field));
            for (int j = 0; j < a.ambient(); ++j) {
                std::vector<Scalar> e(a.ambient(), Scalar::zero(field));
                e[j] = Scalar::one(field);
                f.directions.push_back(std::move(e));
            }
        } else {
            f.point = *solve(normals, rhs);
            f.directions = rank_kernel_det(normals).kernel;
        }
        l.flats.push_back(std::move(f));
    }

    const std::size_t n = l.flats.size();
    l.covers.assign(n, {});
    l.mobius.assign(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        if (l.flats[x].members == 0) {
            l.mobius[x] = 1;
            continue;
        }
        long long acc = 0;
        for (std::size_t y = 0; y < x; ++y) {
            const HyperplaneSet my = l.flats[y].members, mx = l.flats[x].members;
            if ((my & mx) != my || my == mx) continue;
            acc += l.mobius[y];
            if (l.flats[y].rank + 1 == l.flats[x].rank) l.covers[y].push_back(x);
        }
        l.mobius[x] = -acc;
    }
    return l;
}

std::string to_string(const IntPolynomial& p, char var) {
    std::string out;
    for (std::size_t k = p.size(); k-- > 0;) {
        const long long c = p[k];
        if (c == 0) continue;
        const long long a = c < 0 ? -c : c;
        if (out.empty()) out += c < 0 ? "-" : "";
        else out += c < 0 ? "-" : "+";
        std::string mono = k == 0 ? "" : (k == 1 ? std::string(1, var) : std::string(1, var) + "^" + std::to_string(k));
        if (mono.empty()) out += std::to_string(a);
        else if (a == 1) out += mono;
        else out += std::to_string(a) + "*" + mono;
    }
    return out.empty() ? "0" : out;
}

long long evaluate(const IntPolynomial& p, long long t) {
    long long acc = 0;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * t + p[k];
    return acc;
}

IntPolynomial characteristic_polynomial(const IntersectionLattice& l, int ambient) {
    IntPolynomial chi(ambient + 1, 0);
    for (std::size_t i = 0; i < l.flats.size(); ++i) chi[l.flats[i].dim] += l.mobius[i];
    return chi;
}

IntPolynomial characteristic_polynomial(const Arrangement& a) {
    return characteristic_polynomial(lattice(a), a.ambient());
}

ChamberCounts chamber_counts(const Arrangement& a) {
    if (!a.field()->is_rationals()) throw UsageError("chamber counts need an arrangement over Q");
    const IntPolynomial chi = characteristic_polynomial(a);
    const int l = a.ambient();
    ChamberCounts out;
    out.regions = (l % 2 ? -1 : 1) * evaluate(chi, -1);
    out.bounded = a.rank() == l ? (l % 2 ? -1 : 1) * evaluate(chi, 1) : 0;
    return out;
}

Arrangement cone(const Arrangement& a) {
    const FieldSpec* field = a.field();
    std::vector<Hyperplane> hs;
    Hyperplane inf;
    inf.normal.assign(a.ambient() + 1, Scalar::zero(field));
    inf.normal[0] = Scalar::one(field);
    inf.offset = Scalar::zero(field);
    hs.push_back(std::move(inf));
    for (const auto& h : a.hyperplanes()) {
        Hyperplane c;
        c.normal.push_back(-h.offset);
        c.normal.insert(c.normal.end(), h.normal.begin(), h.normal.end());
        c.offset = Scalar::zero(field);
        hs.push_back(std::move(c));
    }
    return Arrangement(a.ambient() + 1, ArrangementKind::central, std::move(hs), field);
}

Arrangement decone(const Arrangement& a, std::size_t chosen) {
    if (!a.is_central()) throw UsageError("deconing needs a central arrangement");
    if (chosen >= a.size()) throw UsageError("chosen hyperplane is not in the arrangement");
    const FieldSpec* field = a.field();
    const auto& alpha = a.hyperplane(chosen).normal;
    int k = 0;
    while (alpha[k].is_zero()) ++k;
    const Scalar inv = alpha[k].inverse();
    std::vector<Hyperplane> hs;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j == chosen) continue;
        const auto& b = a.hyperplane(j).normal;
        const Scalar ratio = b[k] * inv;
        Hyperplane h;
        for (int i = 0; i < a.ambient(); ++i)
            if (i != k) h.normal.push_back(b[i] - ratio * alpha[i]);
        h.offset = -ratio;
        hs.push_back(std::move(h));
    }
    return Arrangement(a.ambient() - 1, ArrangementKind::affine, std::move(hs), field);
}

Arrangement deletion(const Arrangement& a, std::size_t index) {
    if (index >= a.size()) throw UsageError("hyperplane index out of range");
    return a.subarrangement(a.all() & ~(HyperplaneSet{1} << index));
}

Arrangement restriction(const Arrangement& a, std::size_t index) {
    if (index >= a.size()) throw UsageError("hyperplane index out of range");
    const FieldSpec* field = a.field();
    const auto& alpha = a.hyperplane(index).normal;
    const Scalar c0 = a.hyperplane(index).offset;
    int k = 0;
    while (alpha[k].is_zero()) ++k;
    const Scalar inv = alpha[k].inverse();
    std::vector<Hyperplane> hs;
    std::vector<std::vector<Scalar>> seen;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j == index) continue;
        const auto& h = a.hyperplane(j);
        const Scalar ratio = h.normal[k] * inv;
        Hyperplane r;
        bool nonzero = false;
        for (int i = 0; i < a.ambient(); ++i) {
            if (i == k) continue;
            r.normal.push_back(h.normal[i] - ratio * alpha[i]);
            nonzero = nonzero || !r.normal.back().is_zero();
        }
        if (!nonzero) continue;
        r.offset = h.offset - ratio * c0;
        auto key = normalized(r);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(std::move(key));
        hs.push_back(std::move(r));
    }
    return Arrangement(a.ambient() - 1, a.kind(), std::move(hs), field);
}

std::vector<HyperplaneSet> matroid_components(const Arrangement& a, HyperplaneSet members) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (members >> i & 1u) idx.push_back(static_cast<int>(i));
    std::vector<int> parent(a.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    HyperplaneSet basis = 0;
    int r = 0;
    for (int i : idx) {
        const HyperplaneSet b = basis | (HyperplaneSet{1} << i);
        const int rb = a.rank_of(b);
        if (rb > r) {
            basis = b;
            r = rb;
        }
    }
    for (int e : idx) {
        const HyperplaneSet ebit = HyperplaneSet{1} << e;
        if (basis & ebit) continue;
        for (int b : idx) {
            const HyperplaneSet bbit = HyperplaneSet{1} << b;
            if (!(basis & bbit)) continue;
            if (a.rank_of((basis & ~bbit) | ebit) == r) parent[find(e)] = find(b);
        }
    }
    std::vector<HyperplaneSet> comps;
    std::vector<int> roots;
    for (int i : idx) {
        const int root = find(i);
        auto it = std::find(roots.begin(), roots.end(), root);
        if (it == roots.end()) {
            roots.push_back(root);
            comps.push_back(HyperplaneSet{1} << i);
        } else {
            comps[it - roots.begin()] |= HyperplaneSet{1} << i;
        }
    }
    return comps;
}

Decomposition is_decomposable(const Arrangement& a, std::optional<HyperplaneSet> members) {
    const HyperplaneSet m = members.value_or(a.all());
    if (!a.intersects(m)) throw UsageError("the chosen hyperplanes have empty intersection");
    Decomposition d;
    d.components = matroid_components(a, m);
    if (d.components.size() >= 2) {
        d.decomposable = true;
        d.partition = {d.components.front(), m & ~d.components.front()};
    }
    return d;
}

std::string to_string(Integrality v) {
    switch (v) {
    case Integrality::nonneg_integer: return "nonneg_integer";
    case Integrality::not_nonneg_integer: return "not_nonneg_integer";
    case Integrality::user_asserted: return "user_asserted";
    }
    return "?";
}

Integrality classify_weight(const Scalar& value) {
    const auto q = value.as_rational();
    if (!q) return Integrality::user_asserted;
    return q->get_den() == 1 && sgn(*q) >= 0 ? Integrality::nonneg_integer : Integrality::not_nonneg_integer;
}

Scalar WeightedArrangement::lambda(HyperplaneSet members) const {
    if (weights.size() != arrangement.size()) throw UsageError("one weight per hyperplane is required");
    Scalar acc = Scalar::zero(arrangement.field());
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (members >> i & 1u) acc += weights[i];
    return acc;
}

DenseEdgeReport dense_edges(const WeightedArrangement& wa) {
    const Arrangement& a = wa.arrangement;
    if (wa.weights.size() != a.size()) throw UsageError("one weight per hyperplane is required");
    const IntersectionLattice l = lattice(a);
    DenseEdgeReport r;
    r.dense_edge_check = true;
    r.dense_edge_check_with_center = true;
    for (const auto& f : l.flats) {
        if (f.members == 0) continue;
        if (is_decomposable(a, f.members).decomposable) continue;
        DenseEdge e;
        e.members = f.members;
        e.dim = f.dim;
        e.lambda = wa.lambda(f.members);
        e.integrality = classify_weight(e.lambda);
        e.is_center = a.is_central() && f.members == a.all() && f.rank == a.rank();
        if (e.integrality == Integrality::user_asserted) r.user_asserted = true;
        if (e.integrality == Integrality::nonneg_integer) {
            r.dense_edge_check_with_center = false;
            if (!e.is_center) r.dense_edge_check = false;
        }
        r.edges.push_back(std::move(e));
    }
    return r;
}

long long beta_invariant(const Arrangement& a) {
    const Arrangement c = a.is_central() ? a : cone(a);
    const int r = c.rank();
    if (r == 0) throw UsageError("the beta invariant needs a nonempty arrangement");
    IntPolynomial chi = characteristic_polynomial(c);
    // Divide by (t - 1) synthetically, highest degree first.
    IntPolynomial q(chi.size() - 1, 0);
    long long carry = 0;
    for (std::size_t k = chi.size(); k-- > 1;) {
        carry = chi[k] + carry;
        q[k - 1] = carry;
    }
    if (chi[0] + carry != 0) throw std::logic_error("characteristic polynomial of a central arrangement not divisible by t-1");
    const long long v = evaluate(q, 1);
    return (r - 1) % 2 ? -v : v;
}

} // namespace twistcert
