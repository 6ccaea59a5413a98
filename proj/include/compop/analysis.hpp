#pragma once

#include "compop/funcspace.hpp"
#include "compop/selfmap.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace compop {

/// Which of the four relations holds between two self-maps.
enum class Relation {
    BothFiniteRange,              // both maps have finite range
    Mixed,                        // exactly one map has finite range
    BothInfiniteFiniteDeviation,  // infinite ranges, finitely many disagreements
    BothInfiniteInfiniteDeviation // infinite ranges, infinitely many disagreements
};

std::string to_string(Relation r);
// Display glyph for the relation: ⩳ ≍ ≐ ≒.
std::string symbol(Relation r);

struct RelationClass {
    Relation relation;
    bool equal = false;

    friend bool operator==(const RelationClass&, const RelationClass&) = default;
};

/// Operator norm, essential norm and compactness, all exact.
struct NormReport {
    int operator_norm = 0;
    int essential_norm = 0;
    bool compact = false;
    std::optional<RelationClass> relation;
};

RelationClass classify(const SelfMap& phi, const SelfMap& psi);

/// Compact iff the difference sits in the classes whose essential norm vanishes.
inline bool is_compact_relation(Relation r) {
    return r == Relation::BothFiniteRange || r == Relation::BothInfiniteFiniteDeviation;
}

int essential_norm_of(Relation r);

/// Norms of a single composition operator.
NormReport single_norms(const SelfMap& phi);

/// Norms of C_phi - C_psi.
NormReport difference_norms(const SelfMap& phi, const SelfMap& psi);

struct NormAttainment {
    Point base;
    BoundedFunction witness;
    SupNorm witness_norm;
    SupNorm attained;
};

/// Smallest deviation point w and f_w = chi_{phi(w)} - chi_{psi(w)}, with
/// ||(C_phi - C_psi) f_w|| evaluated exactly on the points of length <= |w|.
NormAttainment norm_attainment_witness(const SelfMap& phi, const SelfMap& psi);

struct WitnessFamily {
    std::vector<Point> base_points;
    std::vector<BoundedFunction> functions;
};

/// For an infinite-deviation pair: f_k = chi_{phi(v_k)} - chi_{psi(v_k)} over
/// the increasing deviation sequence v_k.
WitnessFamily essential_witness_sequence(const SelfMap& phi, const SelfMap& psi, std::size_t n);

/// For a mixed pair: f_k = chi_{F(v_k)} where F is the infinite-range map and
/// F(v_k) escapes the finite range of the other map.
WitnessFamily mixed_noncompact_witness(const SelfMap& phi, const SelfMap& psi, std::size_t n);

/// Checks that a family behaves like a pointwise-null sequence: every member
/// whose base point is not an override key has its whole support at lengths
/// >= the length of its base point, so each point of T meets only finitely
/// many supports.
bool pointwise_null_certificate(const SelfMap& phi, const SelfMap& psi, const WitnessFamily& family);

struct ClassRepresentatives {
    SelfMap same_class;   // compact-side or finite-deviation partner, != phi
    SelfMap other_class;  // mixed or infinite-deviation partner, != phi
    RelationClass same_relation;
    RelationClass other_relation;
};

/// Two maps distinct from phi realizing the two relations available to it.
ClassRepresentatives class_representatives(const SelfMap& phi);

} // namespace compop
