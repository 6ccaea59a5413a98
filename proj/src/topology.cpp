#include "compop/topology.hpp"

#include "compop/errors.hpp"

namespace compop {

std::string to_string(Topology t) {
    return t == Topology::Uniform ? "uniform" : "essential";
}

std::string to_string(BallKind k) {
    switch (k) {
    case BallKind::CompactClass: return "compact-class";
    case BallKind::DotClass: return "dot-class";
    case BallKind::DotClassPlusCompacts: return "dot-class-plus-compacts";
    case BallKind::All: return "all";
    }
    return "?";
}

std::string to_string(Preimage p) {
    switch (p) {
    case Preimage::Empty: return "empty";
    case Preimage::Full: return "[0,1]";
    case Preimage::HalfOpen: return "[0,1)";
    case Preimage::Endpoint: return "{1}";
    }
    return "?";
}

int uniform_distance(const OperatorPoint& x, const OperatorPoint& y) {
    require_same_space(x.symbol, y.symbol);
    return x.symbol == y.symbol ? 0 : 2;
}

int essential_distance(const OperatorPoint& x, const OperatorPoint& y) {
    return essential_norm_of(classify(x.symbol, y.symbol).relation);
}

bool BallDescriptor::contains(const OperatorPoint& candidate) const {
    switch (kind) {
    case BallKind::All: return true;
    case BallKind::CompactClass: return candidate.compact();
    case BallKind::DotClassPlusCompacts:
        if (candidate.compact()) return true;
        [[fallthrough]];
    case BallKind::DotClass:
        return classify(center->symbol, candidate.symbol).relation == Relation::BothInfiniteFiniteDeviation;
    }
    return false;
}

bool BallDescriptor::same_set(const BallDescriptor& other) const {
    if (kind != other.kind) return false;
    if (kind == BallKind::All || kind == BallKind::CompactClass) return true;
    return classify(center->symbol, other.center->symbol).relation == Relation::BothInfiniteFiniteDeviation;
}

BallDescriptor essential_ball(const OperatorPoint& center, const Rational& epsilon) {
    if (epsilon <= 0) throw std::invalid_argument("ball radius must be positive");
    if (center.compact()) {
        return {epsilon <= 1 ? BallKind::CompactClass : BallKind::All, std::nullopt};
    }
    if (epsilon <= 1) return {BallKind::DotClass, center};
    if (epsilon <= 2) return {BallKind::DotClassPlusCompacts, center};
    return {BallKind::All, std::nullopt};
}

bool ball_contains(const OperatorPoint& center, const Rational& epsilon, const OperatorPoint& candidate) {
    if (epsilon <= 0) throw std::invalid_argument("ball radius must be positive");
    return Rational(essential_distance(center, candidate)) < epsilon;
}

bool same_component(const OperatorPoint& x, const OperatorPoint& y, Topology topology) {
    require_same_space(x.symbol, y.symbol);
    if (topology == Topology::Uniform) return x == y;
    // The smallest essential ball around x is its component.
    return essential_ball(x, Rational(1, 2)).contains(y);
}

Isolation is_isolated(const OperatorPoint& x, Topology topology) {
    if (topology == Topology::Uniform) return {true, std::nullopt};
    OperatorPoint witness{class_representatives(x.symbol).same_class};
    if (witness == x || !ball_contains(x, Rational(1, 2), witness)) {
        throw std::logic_error("essential isolation witness failed certification");
    }
    return {false, std::move(witness)};
}

HausdorffCounterexample hausdorff_counterexample(const std::shared_ptr<const Space>& space) {
    OperatorPoint a{SelfMap(space, ConstantTail{space->root()})};
    OperatorPoint b{SelfMap(space, ConstantTail{space->canonical_ray(1)})};
    const Rational half(1, 2);
    const bool mutual = ball_contains(a, half, b) && ball_contains(b, half, a);
    const int du = uniform_distance(a, b);
    const int de = essential_distance(a, b);
    return {std::move(a), std::move(b), du, de, mutual};
}

PathCertificate path_certificate(const OperatorPoint& x, const OperatorPoint& y) {
    if (!same_component(x, y, Topology::Essential)) {
        throw PreconditionError("path_certificate needs operators in the same essential component");
    }
    const auto& sp = x.symbol.space_ptr();
    std::vector<OperatorPoint> centers{x, y};
    auto add_center = [&](SelfMap m) {
        OperatorPoint p{std::move(m)};
        for (const auto& c : centers) {
            if (c == p) return;
        }
        centers.push_back(std::move(p));
    };
    add_center(SelfMap(sp, ConstantTail{sp->root()}));
    add_center(SelfMap(sp, IdentityTail{}));
    add_center(SelfMap(sp, RayAdvanceTail{1}));
    add_center(class_representatives(x.symbol).other_class);

    PathCertificate cert{x, y, {}, true};
    const Rational radii[] = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(5, 2)};
    for (const auto& c : centers) {
        for (const auto& eps : radii) {
            BallDescriptor ball = essential_ball(c, eps);
            bool seen = false;
            for (const auto& prior : cert.checks) seen = seen || prior.ball.same_set(ball);
            if (seen) continue;
            BallCheck check{c, eps, ball};
            check.contains_start = ball.contains(x);
            check.contains_end = ball.contains(y);
            if (check.contains_start && check.contains_end) {
                check.preimage = Preimage::Full;
            } else if (check.contains_start) {
                check.preimage = Preimage::HalfOpen;
            } else if (check.contains_end) {
                check.preimage = Preimage::Endpoint;
            } else {
                check.preimage = Preimage::Empty;
            }
            check.open = check.preimage != Preimage::Endpoint;
            cert.valid = cert.valid && check.open;
            cert.checks.push_back(std::move(check));
        }
    }
    return cert;
}

} // namespace compop
