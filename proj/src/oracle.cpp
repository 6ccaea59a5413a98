#include "compop/oracle.hpp"

#include "compop/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace compop {

namespace {

const SupNorm kOne{Rational(1)};
const SupNorm kTwo{Rational(4)};

std::uint64_t pow3_saturating(std::size_t k, std::uint64_t cap) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (n > cap / 3) return cap + 1;
        n *= 3;
    }
    return n;
}

std::vector<Point> evaluation_domain(const Space& space, std::uint64_t max_length,
                                     const std::vector<Point>& extra) {
    std::vector<Point> domain = space.points_up_to(max_length);
    for (const auto& p : extra) {
        if (p.length > max_length) domain.push_back(p);
    }
    std::sort(domain.begin(), domain.end());
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
    return domain;
}

std::uint64_t max_length_of(const std::vector<Point>& points) {
    std::uint64_t m = 0;
    for (const auto& p : points) m = std::max(m, p.length);
    return m;
}

bool supports_disjoint(const WitnessFamily& family) {
    std::set<Point> seen;
    for (const auto& f : family.functions) {
        for (const auto& [p, z] : f.support()) {
            if (!seen.insert(p).second) return false;
        }
    }
    return true;
}

} // namespace

std::string to_string(ProbeFamily f) {
    switch (f) {
    case ProbeFamily::None: return "none";
    case ProbeFamily::InfiniteDeviation: return "chi-difference";
    case ProbeFamily::Mixed: return "mixed-chi";
    case ProbeFamily::SingleImage: return "chi-image";
    }
    return "?";
}

std::string to_string(CompactnessVerdict v) {
    switch (v) {
    case CompactnessVerdict::ConsistentWithCompact: return "consistent-with-compact";
    case CompactnessVerdict::WitnessAgainstCompact: return "witness-against-compact";
    case CompactnessVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

RestrictedNorm restricted_difference_norm(const SelfMap& phi, const SelfMap& psi, std::uint64_t max_length,
                                          const OracleCaps& caps) {
    require_same_space(phi, psi);
    RestrictedNorm out;

    // Each evaluation point v contributes the term f(phi(v)) - f(psi(v)).
    std::map<Point, std::size_t> needed;
    std::vector<std::pair<std::size_t, std::size_t>> terms;
    for (const auto& v : phi.space().points_up_to(max_length)) {
        const Point a = phi(v);
        const Point b = psi(v);
        if (a != b) out.combinatorial = 2;
        auto ia = needed.emplace(a, needed.size()).first->second;
        auto ib = needed.emplace(b, needed.size()).first->second;
        terms.emplace_back(ia, ib);
    }
    out.needed_points = needed.size();

    const std::size_t k = needed.size();
    if (pow3_saturating(k, caps.sign_patterns) <= caps.sign_patterns) {
        out.joint_search = true;
        std::vector<int> f(k, -1);
        while (true) {
            ++out.patterns;
            for (const auto& [ia, ib] : terms) out.exhaustive = std::max(out.exhaustive, std::abs(f[ia] - f[ib]));
            if (out.exhaustive == 2) break; // |f| <= 1 bounds every term by 2
            std::size_t i = 0;
            while (i < k && f[i] == 1) f[i++] = -1;
            if (i == k) break;
            ++f[i];
        }
        return out;
    }

    // max over f of max over v == max over v of max over f, and the term at v
    // only sees f on {phi(v), psi(v)}.
    for (const auto& [ia, ib] : terms) {
        const bool shared = ia == ib;
        for (int fa = -1; fa <= 1; ++fa) {
            for (int fb = -1; fb <= 1; ++fb) {
                if (shared && fb != -1) break;
                ++out.patterns;
                out.exhaustive = std::max(out.exhaustive, std::abs(fa - (shared ? fa : fb)));
            }
        }
    }
    return out;
}

EssentialProbe essential_lower_bound_probe(const SelfMap& phi, const SelfMap& psi, std::size_t n) {
    EssentialProbe probe;
    const RelationClass rel = classify(phi, psi);
    if (is_compact_relation(rel.relation)) {
        probe.conclusive = true;
        probe.note = "no non-compactness family exists for this relation";
        return probe;
    }
    try {
        const bool infinite = rel.relation == Relation::BothInfiniteInfiniteDeviation;
        probe.family = infinite ? ProbeFamily::InfiniteDeviation : ProbeFamily::Mixed;
        probe.members = infinite ? essential_witness_sequence(phi, psi, n) : mixed_noncompact_witness(phi, psi, n);
        const auto domain = phi.space().points_up_to(max_length_of(probe.members.base_points));
        const SupNorm target = infinite ? kTwo : kOne;
        bool ok = probe.members.functions.size() == n;
        for (std::size_t k = 0; k < probe.members.functions.size(); ++k) {
            const auto& f = probe.members.functions[k];
            probe.member_norms.push_back(sup_norm(f));
            probe.image_norms.push_back(difference_apply_on(phi, psi, f, domain).max_modulus);
            const Point base[] = {probe.members.base_points[k]};
            const SupNorm at_base = difference_apply_on(phi, psi, f, base).max_modulus;
            ok = ok && probe.member_norms.back() == kOne && at_base == target &&
                 probe.image_norms.back() >= target;
        }
        probe.pointwise_null = pointwise_null_certificate(phi, psi, probe.members) &&
                               (infinite || supports_disjoint(probe.members));
        if (ok && probe.pointwise_null) {
            probe.certified = infinite ? 2 : 1;
            probe.conclusive = true;
        } else {
            probe.note = "witness family failed verification";
        }
    } catch (const ResourceLimitError& e) {
        probe.note = e.what();
    }
    return probe;
}

EssentialProbe single_essential_probe(const SelfMap& phi, std::size_t n) {
    EssentialProbe probe;
    if (range_is_finite(phi)) {
        probe.conclusive = true;
        probe.note = "finite range";
        return probe;
    }
    try {
        probe.family = ProbeFamily::SingleImage;
        probe.members.base_points = infinite_range_sequence(phi, n);
        for (const auto& v : probe.members.base_points) probe.members.functions.push_back(chi(phi(v)));
        const std::uint64_t radius = max_length_of(probe.members.base_points);
        bool ok = probe.members.functions.size() == n;
        for (std::size_t k = 0; k < n && ok; ++k) {
            const auto& f = probe.members.functions[k];
            probe.member_norms.push_back(sup_norm(f));
            const auto eval = operator_apply_restricted(phi, f, radius);
            probe.image_norms.push_back(eval.max_modulus);
            ok = probe.member_norms.back() == kOne && f(phi(probe.members.base_points[k])) == ComplexRational(1) &&
                 eval.max_modulus == kOne;
        }
        probe.pointwise_null = supports_disjoint(probe.members) &&
                               pointwise_null_certificate(phi, phi, probe.members);
        if (ok && probe.pointwise_null) {
            probe.certified = 1;
            probe.conclusive = true;
        } else {
            probe.note = "witness family failed verification";
        }
    } catch (const ResourceLimitError& e) {
        probe.note = e.what();
    }
    return probe;
}

CompactnessProbe compactness_probe(const SelfMap& phi, const SelfMap& psi, std::size_t n,
                                   std::uint64_t max_length) {
    CompactnessProbe probe;
    const RelationClass rel = classify(phi, psi);
    const Space& space = phi.space();
    try {
        if (is_compact_relation(rel.relation)) {
            // The images that can see chi_p are finite; chi_{ray(k)} escapes them.
            std::set<Point> images;
            std::vector<Point> extra;
            if (rel.relation == Relation::BothFiniteRange) {
                images = *finite_range(phi);
                images.merge(*finite_range(psi));
            } else {
                extra = std::get<FiniteDeviation>(deviation(phi, psi)).points;
                for (const auto& v : extra) {
                    images.insert(phi(v));
                    images.insert(psi(v));
                }
            }
            std::size_t escape = 0;
            for (const auto& p : images) {
                if (auto r = space.ray_rank(p)) escape = std::max<std::size_t>(escape, *r + 1);
            }
            probe.escape_index = escape;
            const auto domain = evaluation_domain(space, max_length, extra);
            for (std::size_t k = 0; k < n; ++k) {
                probe.trace.push_back(difference_apply_on(phi, psi, chi(space.canonical_ray(k)), domain).max_modulus);
            }
            if (escape >= n) {
                probe.note = "family too short to escape the deviation images";
                return probe;
            }
            bool zero_tail = true;
            for (std::size_t k = escape; k < n; ++k) zero_tail = zero_tail && probe.trace[k].squared == 0;
            probe.verdict = zero_tail ? CompactnessVerdict::ConsistentWithCompact
                                      : CompactnessVerdict::WitnessAgainstCompact;
            return probe;
        }
        const bool infinite = rel.relation == Relation::BothInfiniteInfiniteDeviation;
        probe.family = infinite ? ProbeFamily::InfiniteDeviation : ProbeFamily::Mixed;
        const WitnessFamily family =
            infinite ? essential_witness_sequence(phi, psi, n) : mixed_noncompact_witness(phi, psi, n);
        const auto domain = evaluation_domain(space, max_length, family.base_points);
        const SupNorm floor = infinite ? kTwo : kOne;
        bool bounded_away = true;
        for (const auto& f : family.functions) {
            probe.trace.push_back(difference_apply_on(phi, psi, f, domain).max_modulus);
            bounded_away = bounded_away && probe.trace.back() >= floor;
        }
        probe.verdict = bounded_away ? CompactnessVerdict::WitnessAgainstCompact : CompactnessVerdict::Inconclusive;
    } catch (const ResourceLimitError& e) {
        probe.trace.clear();
        probe.verdict = CompactnessVerdict::Inconclusive;
        probe.note = e.what();
    }
    return probe;
}

RangeEscape range_escape_probe(const SelfMap& phi, std::uint64_t max_length, std::uint64_t bound) {
    RangeEscape out;
    phi.space().for_each_point(max_length, [&](const Point& v) {
        if (phi(v).length > bound) {
            out.escaped = true;
            out.witness = v;
            return false;
        }
        return true;
    });
    return out;
}

bool deviation_sampling_agrees(const SelfMap& phi, const SelfMap& psi, std::uint64_t max_length) {
    std::vector<Point> sampled;
    for (const auto& v : phi.space().points_up_to(max_length)) {
        if (phi(v) != psi(v)) sampled.push_back(v);
    }
    const auto dev = deviation(phi, psi);
    if (const auto* finite = std::get_if<FiniteDeviation>(&dev)) {
        std::vector<Point> restricted;
        for (const auto& p : finite->points) {
            if (p.length <= max_length) restricted.push_back(p);
        }
        return restricted == sampled;
    }
    // The witness generator must pick the smallest deviating point of every
    // occupied length that has one.
    std::vector<Point> expected;
    for (const auto& p : sampled) {
        if (expected.empty() || expected.back().length != p.length) expected.push_back(p);
    }
    const auto witnesses = std::get<InfiniteDeviation>(dev).take(expected.size());
    return witnesses == expected;
}

} // namespace compop
