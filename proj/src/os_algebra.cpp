#include "twistcert/os_algebra.hpp"

#include "twistcert/errors.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace twistcert {

struct OSAlgebra::Memo {
    std::mutex mutex;
    std::unordered_map<HyperplaneSet, Sparse> reduced;
};

namespace {

HyperplaneSet bit(std::size_t i) { return HyperplaneSet{1} << i; }

/// Sign of e_A ^ e_B relative to e_{A u B}, for disjoint position sets.
int merge_sign(HyperplaneSet a, HyperplaneSet b) {
    int inversions = 0;
    for (HyperplaneSet rest = a; rest; rest &= rest - 1) {
        const int i = std::countr_zero(rest);
        inversions += std::popcount(b & (bit(i) - 1));
    }
    return inversions % 2 ? -1 : 1;
}

} // namespace

bool OSElement::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Scalar& c) { return c.is_zero(); });
}

OSAlgebra::OSAlgebra(Arrangement a, std::vector<std::size_t> order)
    : original_(std::move(a)), order_(std::move(order)), memo_(std::make_shared<Memo>()) {
    const std::size_t n = original_.size();
    if (n > kMaxHyperplanes) throw UsageError("Orlik-Solomon algebra limited to 24 hyperplanes");
    if (order_.empty()) {
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), std::size_t{0});
    }
    if (order_.size() != n) throw UsageError("hyperplane order must list every hyperplane once");
    position_.assign(n, n);
    for (std::size_t p = 0; p < n; ++p) {
        if (order_[p] >= n || position_[order_[p]] != n)
            throw UsageError("hyperplane order must list every hyperplane once");
        position_[order_[p]] = p;
    }
    std::vector<Hyperplane> hs;
    for (std::size_t idx : order_) hs.push_back(original_.hyperplane(idx));
    permuted_ = Arrangement(original_.ambient(), original_.kind(), std::move(hs), original_.field());

    std::vector<HyperplaneSet> current{0};
    while (!current.empty()) {
        std::vector<std::vector<std::size_t>> tuples;
        std::map<HyperplaneSet, std::size_t> index;
        for (HyperplaneSet m : current) {
            std::vector<std::size_t> t;
            for (HyperplaneSet rest = m; rest; rest &= rest - 1) t.push_back(order_[std::countr_zero(rest)]);
            index.emplace(m, tuples.size());
            tuples.push_back(std::move(t));
        }
        basis_.push_back(std::move(tuples));
        basis_index_.push_back(std::move(index));
        std::vector<HyperplaneSet> next;
        for (HyperplaneSet m : current) {
            const std::size_t start = m ? static_cast<std::size_t>(std::bit_width(m)) : 0;
            for (std::size_t j = start; j < n; ++j)
                if (is_nbc(m | bit(j))) next.push_back(m | bit(j));
        }
        current = std::move(next);
    }
}

bool OSAlgebra::is_nbc(HyperplaneSet s) const {
    const int k = std::popcount(s);
    if (!permuted_.intersects(s) || permuted_.rank_of(s) != k) return false;
    const std::size_t top = static_cast<std::size_t>(std::bit_width(s));
    for (std::size_t c = 0; c < top; ++c) {
        if (s & bit(c)) continue;
        const HyperplaneSet above = s & ~(bit(c + 1) - 1);
        if (permuted_.rank_of(above | bit(c)) == std::popcount(above)) return false;
    }
    return true;
}

const OSAlgebra::Sparse& OSAlgebra::reduce(HyperplaneSet s) const {
    {
        std::lock_guard lock(memo_->mutex);
        auto it = memo_->reduced.find(s);
        if (it != memo_->reduced.end()) return it->second;
    }
    Sparse out;
    const int k = std::popcount(s);
    const FieldSpec* f = field();
    if (permuted_.intersects(s) && permuted_.rank_of(s) == k) {
        bool rewritten = false;
        for (std::size_t c = 0; c < permuted_.size() && !rewritten; ++c) {
            if (s & bit(c)) continue;
            const HyperplaneSet above = s & ~(bit(c + 1) - 1);
            const int r = std::popcount(above);
            if (permuted_.rank_of(above | bit(c)) != r) continue;
            // Broken circuit B = C \ {c} of the fundamental circuit C of c over `above`.
            HyperplaneSet broken = 0;
            for (HyperplaneSet rest = above; rest; rest &= rest - 1) {
                const HyperplaneSet t = rest & (~rest + 1);
                if (permuted_.rank_of((above & ~t) | bit(c)) == r) broken |= t;
            }
            const HyperplaneSet remainder = s & ~broken;
            const int outer = merge_sign(broken, remainder);
            // e_B = -sum_{k>=1} (-1)^k e_{C \ c_k}, with c_0 = c and c_1 < c_2 < ... the elements of B.
            int position = 1;
            for (HyperplaneSet rest = broken; rest; rest &= rest - 1, ++position) {
                const HyperplaneSet ck = rest & (~rest + 1);
                const HyperplaneSet term = (broken & ~ck) | bit(c);
                const int sign = -outer * (position % 2 ? -1 : 1) * merge_sign(term, remainder);
                for (const auto& [m, coeff] : reduce(term | remainder)) {
                    Scalar& slot = out.try_emplace(m, Scalar::zero(f)).first->second;
                    if (sign > 0)
                        slot += coeff;
                    else
                        slot -= coeff;
                }
            }
            rewritten = true;
        }
        if (!rewritten) out.emplace(s, Scalar::one(f));
        std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    }
    std::lock_guard lock(memo_->mutex);
    return memo_->reduced.emplace(s, std::move(out)).first->second;
}

std::size_t OSAlgebra::dim(int k) const {
    if (k < 0 || k > top_degree()) return 0;
    return basis_[k].size();
}

std::vector<std::size_t> OSAlgebra::dims() const {
    std::vector<std::size_t> out;
    for (const auto& b : basis_) out.push_back(b.size());
    return out;
}

const std::vector<std::vector<std::size_t>>& OSAlgebra::basis(int k) const {
    static const std::vector<std::vector<std::size_t>> empty;
    if (k < 0 || k > top_degree()) return empty;
    return basis_[k];
}

OSElement OSAlgebra::zero(int k) const { return OSElement{k, std::vector<Scalar>(dim(k), Scalar::zero(field()))}; }

OSElement OSAlgebra::basis_element(int k, std::size_t i) const {
    OSElement e = zero(k);
    e.coords.at(i) = Scalar::one(field());
    return e;
}

HyperplaneSet OSAlgebra::to_positions(std::span<const std::size_t> indices, int& sign) const {
    HyperplaneSet m = 0;
    int inversions = 0;
    sign = 1;
    for (std::size_t idx : indices) {
        if (idx >= position_.size()) throw UsageError("hyperplane index out of range");
        const HyperplaneSet b = bit(position_[idx]);
        if (m & b) {
            sign = 0;
            return 0;
        }
        inversions += std::popcount(m & ~(b - 1));
        m |= b;
    }
    sign = inversions % 2 ? -1 : 1;
    return m;
}

void OSAlgebra::accumulate(OSElement& into, int k, const Sparse& s, const Scalar& factor) const {
    if (k > top_degree()) return;
    for (const auto& [m, coeff] : s) into.coords[basis_index_[k].at(m)] += coeff * factor;
}

OSElement OSAlgebra::from_sparse(int k, const Sparse& s, const Scalar& factor) const {
    OSElement out = zero(k);
    accumulate(out, k, s, factor);
    return out;
}

OSElement OSAlgebra::monomial(std::span<const std::size_t> indices) const {
    const int k = static_cast<int>(indices.size());
    int sign = 0;
    const HyperplaneSet m = to_positions(indices, sign);
    if (sign == 0) return zero(k);
    return from_sparse(k, reduce(m), Scalar(sign).in_field(field()));
}

OSElement OSAlgebra::degree_one(std::span<const Scalar> weights) const {
    if (weights.size() != original_.size()) throw UsageError("weight vector length must equal hyperplane count");
    OSElement out = zero(1);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const std::size_t idx[1] = {i};
        const OSElement e = monomial(idx);
        for (std::size_t j = 0; j < out.coords.size(); ++j) out.coords[j] += e.coords[j] * weights[i];
    }
    return out;
}

OSElement OSAlgebra::wedge(const OSElement& x, const OSElement& y) const {
    const int k = x.degree + y.degree;
    OSElement out = zero(k);
    if (k > top_degree()) return out;
    std::vector<HyperplaneSet> xm, ym;
    for (const auto& [m, i] : basis_index_.at(x.degree)) xm.resize(std::max(xm.size(), i + 1)), xm[i] = m;
    for (const auto& [m, i] : basis_index_.at(y.degree)) ym.resize(std::max(ym.size(), i + 1)), ym[i] = m;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (x.coords[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.coords.size(); ++j) {
            if (y.coords[j].is_zero() || (xm[i] & ym[j])) continue;
            const Scalar c = x.coords[i] * y.coords[j];
            accumulate(out, k, reduce(xm[i] | ym[j]), merge_sign(xm[i], ym[j]) > 0 ? c : -c);
        }
    }
    return out;
}

OSElement OSAlgebra::derivation(std::span<const std::size_t> indices) const {
    if (!original_.is_central()) throw UsageError("the Orlik-Solomon derivation needs a central arrangement");
    const int k = static_cast<int>(indices.size());
    if (k == 0) throw UsageError("derivation of a degree-zero element");
    OSElement out = zero(k - 1);
    std::vector<std::size_t> rest;
    for (int j = 0; j < k; ++j) {
        rest.assign(indices.begin(), indices.end());
        rest.erase(rest.begin() + j);
        const OSElement term = monomial(rest);
        for (std::size_t i = 0; i < out.coords.size(); ++i)
            out.coords[i] += j % 2 ? -term.coords[i] : term.coords[i];
    }
    return out;
}

OSElement OSAlgebra::derivation(const OSElement& x) const {
    if (x.degree == 0) throw UsageError("derivation of a degree-zero element");
    OSElement out = zero(x.degree - 1);
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (x.coords[i].is_zero()) continue;
        const OSElement term = derivation(basis_[x.degree][i]);
        for (std::size_t j = 0; j < out.coords.size(); ++j) out.coords[j] += term.coords[j] * x.coords[i];
    }
    return out;
}

ScalarMatrix OSAlgebra::left_multiplication(const OSElement& a, int k) const {
    ScalarMatrix m(dim(k + a.degree), dim(k), field());
    for (std::size_t j = 0; j < dim(k); ++j) {
        const OSElement col = wedge(a, basis_element(k, j));
        for (std::size_t i = 0; i < col.coords.size(); ++i) m(i, j) = col.coords[i];
    }
    return m;
}

bool OSAlgebra::relations_hold() const {
    const std::size_t n = permuted_.size();
    for (HyperplaneSet s = 1; s < (HyperplaneSet{1} << n); ++s) {
        const int k = std::popcount(s);
        if (k > permuted_.ambient() + 2 || !permuted_.intersects(s)) continue;
        if (permuted_.rank_of(s) != k - 1) continue;
        bool minimal = true;
        for (HyperplaneSet rest = s; rest && minimal; rest &= rest - 1)
            if (permuted_.rank_of(s & ~(rest & (~rest + 1))) != k - 1) minimal = false;
        if (!minimal) continue;
        std::vector<std::size_t> idx;
        for (HyperplaneSet rest = s; rest; rest &= rest - 1) idx.push_back(order_[std::countr_zero(rest)]);
        OSElement total = zero(k - 1);
        for (int j = 0; j < k; ++j) {
            std::vector<std::size_t> drop = idx;
            drop.erase(drop.begin() + j);
            const OSElement term = monomial(drop);
            for (std::size_t i = 0; i < total.coords.size(); ++i)
                total.coords[i] += j % 2 ? -term.coords[i] : term.coords[i];
        }
        if (!total.is_zero()) return false;
    }
    return true;
}

} // namespace twistcert
