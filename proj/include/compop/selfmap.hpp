#pragma once

#include "compop/space.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace compop {

struct IdentityTail {
    friend bool operator==(const IdentityTail&, const IdentityTail&) = default;
};

struct ConstantTail {
    Point target;
    friend bool operator==(const ConstantTail&, const ConstantTail&) = default;
};

/// v -> canonical_ray(|v| + step), step >= 1.
struct RayAdvanceTail {
    std::uint64_t step = 1;
    friend bool operator==(const RayAdvanceTail&, const RayAdvanceTail&) = default;
};

using TailRule = std::variant<IdentityTail, ConstantTail, RayAdvanceTail>;

std::string to_string(const TailRule& tail);

using OverrideTable = std::map<Point, Point>;

/// A self-map given by a tail rule plus a finite table of overrides.
///
/// The override table is kept in normal form: entries that agree with the tail
/// rule are dropped on construction, so structural equality is map equality.
class SelfMap {
public:
    SelfMap(std::shared_ptr<const Space> space, TailRule tail, OverrideTable overrides = {});

    const Space& space() const { return *space_; }
    const std::shared_ptr<const Space>& space_ptr() const { return space_; }
    const TailRule& tail() const { return tail_; }
    const OverrideTable& overrides() const { return overrides_; }

    /// Throws ForeignPointError if `v` is not a point of the space.
    Point operator()(const Point& v) const;
    Point tail_value(const Point& v) const;

    SelfMap with_override(const Point& key, const Point& value) const;
    SelfMap with_tail(TailRule tail) const;

    std::string describe() const;

    friend bool operator==(const SelfMap& a, const SelfMap& b);

private:
    std::shared_ptr<const Space> space_;
    TailRule tail_;
    OverrideTable overrides_;
};

inline Point apply(const SelfMap& map, const Point& v) { return map(v); }

bool same_space(const SelfMap& a, const SelfMap& b);
// Throws SpaceMismatchError when the maps live on different spaces.
void require_same_space(const SelfMap& a, const SelfMap& b);

/// Exactly decided: true iff the tail is constant.
bool range_is_finite(const SelfMap& map);

/// The exact (finite) range of a finite-range map; nullopt for infinite range.
std::optional<std::set<Point>> finite_range(const SelfMap& map);

/// Largest image length of a finite-range map; nullopt for infinite range.
std::optional<std::uint64_t> range_length_bound(const SelfMap& map);

std::vector<Point> increasing_deviation_sequence(const SelfMap& phi, const SelfMap& psi, std::size_t n);

struct FiniteDeviation {
    std::vector<Point> points;
};

/// An infinite deviation set, carrying a generator of strictly
/// length-increasing witnesses.
class InfiniteDeviation {
public:
    InfiniteDeviation(SelfMap phi, SelfMap psi) : phi_(std::move(phi)), psi_(std::move(psi)) {}
    std::vector<Point> take(std::size_t n) const { return increasing_deviation_sequence(phi_, psi_, n); }

private:
    SelfMap phi_;
    SelfMap psi_;
};

using DeviationResult = std::variant<FiniteDeviation, InfiniteDeviation>;

/// The set of points where the two maps disagree.
DeviationResult deviation(const SelfMap& phi, const SelfMap& psi);
bool deviation_is_finite(const SelfMap& phi, const SelfMap& psi);

/// n points of strictly increasing length whose images have strictly
/// increasing length. Images in `excluded` are skipped.
std::vector<Point> infinite_range_sequence(const SelfMap& map, std::size_t n,
                                           const std::set<Point>& excluded = {});

} // namespace compop
