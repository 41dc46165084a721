#pragma once

#include "twistcert/os_algebra.hpp"

#include <bit>
#include <map>

namespace twistcert::testing {

/// Degree-k part of the exterior algebra modulo the Orlik-Solomon ideal,
/// spanned directly by its generators: e_S for S with empty intersection and
/// e_T ^ d(e_C) for circuits C (T arbitrary) with nonempty intersection.
class ExteriorQuotient {
public:
    ExteriorQuotient(const Arrangement& a, int k) : a_(a), k_(k), ideal_(0, 0, a.field()) {
        const std::size_t n = a.size();
        for (HyperplaneSet s = 0; s < (HyperplaneSet{1} << n); ++s)
            if (std::popcount(s) == k) {
                column_.emplace(s, masks_.size());
                masks_.push_back(s);
            }
        ideal_ = ScalarMatrix(0, masks_.size(), a.field());
        std::vector<HyperplaneSet> circuits;
        for (HyperplaneSet c = 1; c < (HyperplaneSet{1} << n); ++c) {
            const int size = std::popcount(c);
            if (!a.intersects(c) || a.rank_of(c) != size - 1) continue;
            bool minimal = true;
            for (int i = 0; i < static_cast<int>(n); ++i)
                if ((c >> i & 1u) && a.rank_of(c & ~(HyperplaneSet{1} << i)) != size - 1) minimal = false;
            if (minimal) circuits.push_back(c);
        }
        for (HyperplaneSet s : masks_)
            if (!a.intersects(s)) {
                std::vector<Scalar> row(masks_.size(), Scalar::zero(a.field()));
                row[column_.at(s)] = Scalar::one(a.field());
                ideal_.append_row(row);
            }
        for (HyperplaneSet c : circuits) {
            const int t_size = k - std::popcount(c) + 1;
            if (t_size < 0) continue;
            for (HyperplaneSet t = 0; t < (HyperplaneSet{1} << n); ++t) {
                if (std::popcount(t) != t_size) continue;
                std::vector<Scalar> row(masks_.size(), Scalar::zero(a.field()));
                int j = 0;
                for (int i = 0; i < static_cast<int>(n); ++i) {
                    if (!(c >> i & 1u)) continue;
                    const HyperplaneSet rest = c & ~(HyperplaneSet{1} << i);
                    if (t & rest) {
                        ++j;
                        continue;
                    }
                    const int sign = (j % 2 ? -1 : 1) * merge_sign(t, rest);
                    row[column_.at(t | rest)] += Scalar(sign).in_field(a.field());
                    ++j;
                }
                ideal_.append_row(row);
            }
        }
        ideal_rank_ = rank(ideal_);
    }

    std::size_t dimension() const { return masks_.size() - ideal_rank_; }

    /// Whether sum coeffs[i] e_{tuples[i]} lies in the ideal (tuples in increasing index order).
    bool in_ideal(const std::vector<std::pair<std::vector<std::size_t>, Scalar>>& terms) const {
        std::vector<Scalar> row(masks_.size(), Scalar::zero(a_.field()));
        for (const auto& [tuple, coeff] : terms) {
            HyperplaneSet m = 0;
            for (std::size_t i : tuple) m |= HyperplaneSet{1} << i;
            row[column_.at(m)] += coeff;
        }
        ScalarMatrix extended = ideal_;
        extended.append_row(row);
        return rank(extended) == ideal_rank_;
    }

    static int merge_sign(HyperplaneSet a, HyperplaneSet b) {
        int inv = 0;
        for (int i = 0; i < 32; ++i)
            if (a >> i & 1u) inv += std::popcount(b & ((HyperplaneSet{1} << i) - 1));
        return inv % 2 ? -1 : 1;
    }

private:
    const Arrangement& a_;
    int k_;
    std::vector<HyperplaneSet> masks_;
    std::map<HyperplaneSet, std::size_t> column_;
    ScalarMatrix ideal_;
    std::size_t ideal_rank_ = 0;
};

} // namespace twistcert::testing
