#pragma once

#include "twistcert/aomoto.hpp"
#include "twistcert/linear_systems.hpp"

namespace twistcert {

struct LocalModelVerdict {
    HypothesisReport hypotheses;
    /// alpha_j = sum_i A(i, j) x_i, central in K^n.
    Arrangement local;
    std::vector<Scalar> weights;
    std::vector<Scalar> normalized_weights;
    std::vector<std::size_t> ranks;
    /// Distinguished tuples (0-based), each mapped to d[e_{i1} : ... : e_{in}].
    std::vector<std::vector<std::size_t>> family;
    bool family_independent = false;
    /// Degree-n family e_1 ^ e_{i1} ^ ..., present when s < m.
    std::vector<std::vector<std::size_t>> top_family;
    std::optional<bool> top_family_independent;
    /// omega_lambda and the distinguished eta are pullbacks of e_lambda and
    /// d[e_{i1} : ...] along the chart coordinates y_i = F_{b_i} / x_k^d.
    bool omega_restricts = false;
    bool eta_restricts = false;
    bool certified() const {
        return family_independent && top_family_independent.value_or(true) && omega_restricts && eta_restricts;
    }
};

/// Local arrangement model at the base point. UsageError unless the
/// hypotheses hold with a base point, the weights are a rational admissible
/// weight, and the first and last of the s weights are not integers.
LocalModelVerdict restrict_and_certify(const DivisorSystem& sys);

/// Order of the first s members that puts the first and the last non-integral
/// weights at the two ends; nullopt when fewer than two weights are non-integral.
std::optional<std::vector<std::size_t>> local_model_order(const DivisorSystem& sys);

/// The first s members (divisors and weights) permuted by `order`.
DivisorSystem reordered(const DivisorSystem& sys, std::span<const std::size_t> order);

} // namespace twistcert
