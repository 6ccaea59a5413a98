#pragma once

#include "compop/analysis.hpp"
#include "compop/funcspace.hpp"
#include "compop/selfmap.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace compop {

/// The composition operator C_phi, identified with its symbol.
struct OperatorPoint {
    SelfMap symbol;

    explicit OperatorPoint(SelfMap s) : symbol(std::move(s)) {}
    bool compact() const { return range_is_finite(symbol); }

    friend bool operator==(const OperatorPoint&, const OperatorPoint&) = default;
};

enum class Topology { Uniform, Essential };

std::string to_string(Topology t);

/// Operator-norm distance: 0 or 2.
int uniform_distance(const OperatorPoint& x, const OperatorPoint& y);
/// Essential-norm pseudo-distance: 0, 1 or 2.
int essential_distance(const OperatorPoint& x, const OperatorPoint& y);

enum class BallKind {
    CompactClass,         // the compact composition operators
    DotClass,             // finite-deviation class of the center
    DotClassPlusCompacts, // that class together with the compacts
    All                   // every composition operator
};

std::string to_string(BallKind k);

/// Symbolic shape of an essential ball; the classes involved are infinite, so
/// membership is the only computable interface.
struct BallDescriptor {
    BallKind kind;
    std::optional<OperatorPoint> center; // set for the two DotClass kinds

    bool contains(const OperatorPoint& candidate) const;
    // Same set of operators (DotClass centers compared up to finite deviation).
    bool same_set(const BallDescriptor& other) const;
};

/// Throws std::invalid_argument unless epsilon > 0.
BallDescriptor essential_ball(const OperatorPoint& center, const Rational& epsilon);

/// essential_distance(center, candidate) < epsilon.
bool ball_contains(const OperatorPoint& center, const Rational& epsilon, const OperatorPoint& candidate);

bool same_component(const OperatorPoint& x, const OperatorPoint& y, Topology topology);

struct Isolation {
    bool isolated = false;
    // A distinct operator in every neighbourhood of x (essential topology only).
    std::optional<OperatorPoint> witness;
};

Isolation is_isolated(const OperatorPoint& x, Topology topology);

struct HausdorffCounterexample {
    OperatorPoint first;
    OperatorPoint second;
    int uniform_distance = 0;
    int essential_distance = 0;
    bool mutual_containment = false; // each lies in the other's ball of radius 1/2
};

/// Two distinct compact operators that no pair of essential neighbourhoods
/// can separate.
HausdorffCounterexample hausdorff_counterexample(const std::shared_ptr<const Space>& space);

/// Preimage of a set under the step path gamma (x on [0,1), y at 1).
enum class Preimage {
    Empty,
    Full,     // [0,1]
    HalfOpen, // [0,1)
    Endpoint  // {1}, the only non-open case
};

std::string to_string(Preimage p);

struct BallCheck {
    OperatorPoint center;
    Rational epsilon;
    BallDescriptor ball;
    bool contains_start = false;
    bool contains_end = false;
    Preimage preimage = Preimage::Empty;
    bool open = true;
};

struct PathCertificate {
    OperatorPoint start;
    OperatorPoint end;
    std::vector<BallCheck> checks; // one per descriptor-distinct basic ball
    bool valid = false;
};

/// Continuity certificate for the two-piece step path from x to y.
/// Throws PreconditionError unless x and y share an essential component.
PathCertificate path_certificate(const OperatorPoint& x, const OperatorPoint& y);

} // namespace compop
