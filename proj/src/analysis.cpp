#include "compop/analysis.hpp"

#include "compop/errors.hpp"

#include <algorithm>
#include <set>

namespace compop {

std::string to_string(Relation r) {
    switch (r) {
    case Relation::BothFiniteRange: return "both-finite-range";
    case Relation::Mixed: return "mixed";
    case Relation::BothInfiniteFiniteDeviation: return "finite-deviation";
    case Relation::BothInfiniteInfiniteDeviation: return "infinite-deviation";
    }
    return "?";
}

std::string symbol(Relation r) {
    switch (r) {
    case Relation::BothFiniteRange: return "⩳";
    case Relation::Mixed: return "≍";
    case Relation::BothInfiniteFiniteDeviation: return "≐";
    case Relation::BothInfiniteInfiniteDeviation: return "≒";
    }
    return "?";
}

RelationClass classify(const SelfMap& phi, const SelfMap& psi) {
    require_same_space(phi, psi);
    const bool finite_phi = range_is_finite(phi);
    const bool finite_psi = range_is_finite(psi);
    RelationClass out{Relation::Mixed, phi == psi};
    if (finite_phi && finite_psi) {
        out.relation = Relation::BothFiniteRange;
    } else if (finite_phi != finite_psi) {
        out.relation = Relation::Mixed;
    } else {
        out.relation = deviation_is_finite(phi, psi) ? Relation::BothInfiniteFiniteDeviation
                                                     : Relation::BothInfiniteInfiniteDeviation;
    }
    return out;
}

int essential_norm_of(Relation r) {
    switch (r) {
    case Relation::BothInfiniteInfiniteDeviation: return 2;
    case Relation::Mixed: return 1;
    case Relation::BothFiniteRange:
    case Relation::BothInfiniteFiniteDeviation: return 0;
    }
    return 0;
}

NormReport single_norms(const SelfMap& phi) {
    const bool finite = range_is_finite(phi);
    return NormReport{1, finite ? 0 : 1, finite, std::nullopt};
}

NormReport difference_norms(const SelfMap& phi, const SelfMap& psi) {
    const RelationClass rel = classify(phi, psi);
    return NormReport{rel.equal ? 0 : 2, essential_norm_of(rel.relation), is_compact_relation(rel.relation), rel};
}

NormAttainment norm_attainment_witness(const SelfMap& phi, const SelfMap& psi) {
    require_same_space(phi, psi);
    if (phi == psi) throw PreconditionError("norm_attainment_witness needs distinct maps");
    const auto dev = deviation(phi, psi);
    Point w;
    if (const auto* finite = std::get_if<FiniteDeviation>(&dev)) {
        w = finite->points.front();
    } else {
        // one point per occupied length, smallest id first: the first is the global minimum
        w = std::get<InfiniteDeviation>(dev).take(1).front();
    }
    NormAttainment out{w, difference_witness(phi, psi, w), {}, {}};
    out.witness_norm = sup_norm(out.witness);
    out.attained = difference_apply_restricted(phi, psi, out.witness, w.length).max_modulus;
    return out;
}

WitnessFamily essential_witness_sequence(const SelfMap& phi, const SelfMap& psi, std::size_t n) {
    if (classify(phi, psi).relation != Relation::BothInfiniteInfiniteDeviation) {
        throw PreconditionError("essential_witness_sequence needs an infinite-deviation pair");
    }
    WitnessFamily family;
    family.base_points = increasing_deviation_sequence(phi, psi, n);
    for (const auto& v : family.base_points) family.functions.push_back(difference_witness(phi, psi, v));
    return family;
}

WitnessFamily mixed_noncompact_witness(const SelfMap& phi, const SelfMap& psi, std::size_t n) {
    if (classify(phi, psi).relation != Relation::Mixed) {
        throw PreconditionError("mixed_noncompact_witness needs a mixed pair");
    }
    const bool phi_infinite = !range_is_finite(phi);
    const SelfMap& unbounded = phi_infinite ? phi : psi;
    const SelfMap& bounded = phi_infinite ? psi : phi;
    WitnessFamily family;
    family.base_points = infinite_range_sequence(unbounded, n, *finite_range(bounded));
    for (const auto& v : family.base_points) family.functions.push_back(chi(unbounded(v)));
    return family;
}

bool pointwise_null_certificate(const SelfMap& phi, const SelfMap& psi, const WitnessFamily& family) {
    if (family.base_points.size() != family.functions.size()) return false;
    for (std::size_t k = 0; k < family.base_points.size(); ++k) {
        const Point& v = family.base_points[k];
        if (k > 0 && family.base_points[k - 1].length >= v.length) return false;
        if (phi.overrides().contains(v) || psi.overrides().contains(v)) continue;
        for (const auto& [p, z] : family.functions[k].support()) {
            if (p.length < v.length) return false;
        }
    }
    return true;
}

ClassRepresentatives class_representatives(const SelfMap& phi) {
    const Space& space = phi.space();
    const auto& sp = phi.space_ptr();
    const Point root = space.root();
    auto certify = [&](const SelfMap& r, Relation want) {
        RelationClass rel = classify(phi, r);
        if (rel.relation != want || rel.equal) {
            throw std::logic_error("class representative failed certification for " + phi.describe());
        }
        return rel;
    };
    if (range_is_finite(phi)) {
        const SelfMap constant_root(sp, ConstantTail{root});
        SelfMap same = phi == constant_root ? SelfMap(sp, ConstantTail{space.canonical_ray(1)}) : constant_root;
        SelfMap other(sp, IdentityTail{});
        auto same_rel = certify(same, Relation::BothFiniteRange);
        auto other_rel = certify(other, Relation::Mixed);
        return {std::move(same), std::move(other), same_rel, other_rel};
    }
    // Override the root to the smallest point other than phi(root).
    const Point target = phi(root) == root ? space.canonical_ray(1) : root;
    SelfMap same = phi.with_override(root, target);
    // Swap the tail for a different infinite-range rule, keeping the overrides.
    TailRule other_tail = IdentityTail{};
    if (std::holds_alternative<IdentityTail>(phi.tail())) {
        other_tail = RayAdvanceTail{1};
    } else {
        other_tail = RayAdvanceTail{std::get<RayAdvanceTail>(phi.tail()).step + 1};
    }
    SelfMap other = phi.with_tail(other_tail);
    auto same_rel = certify(same, Relation::BothInfiniteFiniteDeviation);
    auto other_rel = certify(other, Relation::BothInfiniteInfiniteDeviation);
    return {std::move(same), std::move(other), same_rel, other_rel};
}

} // namespace compop
