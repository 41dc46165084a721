#pragma once

#include "twistcert/matrix.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace twistcert {

enum class ArrangementKind { affine, central, projective };

std::string to_string(ArrangementKind kind);
ArrangementKind parse_arrangement_kind(const std::string& text);

/// H = {x : normal . x = offset}.
struct Hyperplane {
    std::vector<Scalar> normal;
    Scalar offset;
};

/// Member sets are bitmasks over hyperplane indices.
using HyperplaneSet = std::uint32_t;
inline constexpr std::size_t kMaxHyperplanes = 24;

/// Finite set of distinct hyperplanes in K^ambient. Projective arrangements in
/// P^{ambient-1} are stored through their central cone.
class Arrangement {
public:
    Arrangement();
    Arrangement(int ambient, ArrangementKind kind, std::vector<Hyperplane> hyperplanes,
                const FieldSpec* field = FieldSpec::rationals());

    /// Hyperplanes {f = 0} for polynomials of degree exactly one.
    static Arrangement from_linear_forms(std::span<const MultiPoly> forms, ArrangementKind kind);

    int ambient() const { return ambient_; }
    ArrangementKind kind() const { return kind_; }
    bool is_central() const { return kind_ != ArrangementKind::affine; }
    std::size_t size() const { return hyperplanes_.size(); }
    const Hyperplane& hyperplane(std::size_t i) const { return hyperplanes_[i]; }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
    const FieldSpec* field() const { return field_; }
    HyperplaneSet all() const { return size() == 32 ? ~HyperplaneSet{0} : (HyperplaneSet{1} << size()) - 1; }

    /// normal . x - offset in ambient variables.
    MultiPoly linear_form(std::size_t i) const;

    /// Codimension of the intersection of the members (meaningful when it is nonempty).
    int rank_of(HyperplaneSet members) const;
    /// Rank of the whole arrangement, i.e. of the span of all normals.
    int rank() const { return normal_rank(all()); }
    int normal_rank(HyperplaneSet members) const;
    bool intersects(HyperplaneSet members) const;
    /// Every hyperplane containing the intersection of the members.
    HyperplaneSet closure(HyperplaneSet members) const;

    Arrangement subarrangement(HyperplaneSet members) const;

private:
    int cone_rank(HyperplaneSet members, bool with_infinity) const;

    int ambient_ = 0;
    ArrangementKind kind_ = ArrangementKind::central;
    std::vector<Hyperplane> hyperplanes_;
    const FieldSpec* field_ = FieldSpec::rationals();
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

/// Nonempty intersection of hyperplanes.
struct Flat {
    HyperplaneSet members = 0;
    int rank = 0;
    int dim = 0;
    std::vector<Scalar> point;
    std::vector<std::vector<Scalar>> directions;
};

struct IntersectionLattice {
    /// By increasing rank (decreasing dimension), then by member mask.
    std::vector<Flat> flats;
    /// covers[i]: flats of rank one higher lying in flat i.
    std::vector<std::vector<std::size_t>> covers;
    std::vector<long long> mobius;

    std::optional<std::size_t> index_of(HyperplaneSet members) const;
    /// Number of flats per rank.
    std::vector<std::size_t> rank_counts() const;
    /// |sum of mu over flats of rank k| for each k.
    std::vector<long long> whitney_numbers() const;
};

/// UsageError above kMaxHyperplanes.
IntersectionLattice lattice(const Arrangement& a);

/// Integer coefficients, lowest degree first.
using IntPolynomial = std::vector<long long>;
std::string to_string(const IntPolynomial& p, char var = 't');
long long evaluate(const IntPolynomial& p, long long t);

/// sum over flats of mu(X) t^{dim X}.
IntPolynomial characteristic_polynomial(const Arrangement& a);
IntPolynomial characteristic_polynomial(const IntersectionLattice& l, int ambient);

struct ChamberCounts {
    long long regions = 0;
    long long bounded = 0;
};

/// Zaslavsky counts for arrangements over Q; UsageError for other fields.
ChamberCounts chamber_counts(const Arrangement& a);

/// Homogenizes with a new first coordinate x0; H_inf = {x0 = 0} becomes hyperplane 0.
Arrangement cone(const Arrangement& a);
/// Chart {alpha_chosen = 1} of a central arrangement, eliminating the first
/// coordinate where alpha_chosen has a nonzero coefficient.
Arrangement decone(const Arrangement& a, std::size_t chosen);
Arrangement deletion(const Arrangement& a, std::size_t index);
/// Arrangement induced on hyperplane `index`, in coordinates of that hyperplane.
Arrangement restriction(const Arrangement& a, std::size_t index);

/// Connected components of the matroid of the members (with affine hyperplanes
/// through a common point represented by their normals).
std::vector<HyperplaneSet> matroid_components(const Arrangement& a, HyperplaneSet members);

struct Decomposition {
    bool decomposable = false;
    /// Two parts (first component, rest) when decomposable.
    std::vector<HyperplaneSet> partition;
    std::vector<HyperplaneSet> components;
};

/// Decides decomposability of the central arrangement A_X given by `members`
/// (all hyperplanes by default). Members must intersect.
Decomposition is_decomposable(const Arrangement& a, std::optional<HyperplaneSet> members = std::nullopt);

enum class Integrality { nonneg_integer, not_nonneg_integer, user_asserted };
std::string to_string(Integrality v);
Integrality classify_weight(const Scalar& value);

struct WeightedArrangement {
    Arrangement arrangement;
    std::vector<Scalar> weights;

    /// sum of weights of hyperplanes containing X.
    Scalar lambda(HyperplaneSet members) const;
};

struct DenseEdge {
    HyperplaneSet members = 0;
    int dim = 0;
    Scalar lambda;
    Integrality integrality = Integrality::not_nonneg_integer;
    bool is_center = false;
};

struct DenseEdgeReport {
    std::vector<DenseEdge> edges;
    /// No dense edge other than the center of a central arrangement has lambda_X in Z_{>=0}.
    bool dense_edge_check = false;
    /// Same test with the center included.
    bool dense_edge_check_with_center = false;
    bool user_asserted = false;
};

DenseEdgeReport dense_edges(const WeightedArrangement& wa);

/// (-1)^{r-1} [chi(t)/(t-1)](1) for the central (or coned affine) arrangement of rank r.
long long beta_invariant(const Arrangement& a);

} // namespace twistcert
