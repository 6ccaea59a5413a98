#include "compop/selfmap.hpp"

#include "compop/errors.hpp"

#include <algorithm>
#include <limits>

namespace compop {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_point(const Space& space, const Point& p, const char* what) {
    if (!space.contains(p)) {
        throw ForeignPointError(std::string(what) + " " + to_string(p) + " is not a point of " + space.describe());
    }
}

// Override keys of either map lying at `length`.
std::set<Point> keys_at_length(const SelfMap& phi, const SelfMap& psi, std::uint64_t length) {
    std::set<Point> keys;
    for (const auto* m : {&phi, &psi}) {
        const auto& table = m->overrides();
        for (auto it = table.lower_bound(Point{length, 0});
             it != table.end() && it->first.length == length; ++it) {
            keys.insert(it->first);
        }
    }
    return keys;
}

enum class LevelAgreement { None, Single, Whole };

// Where the two tail rules coincide on the level `length`. `Single` means at
// most the one point stored in `at`.
LevelAgreement tail_agreement(const Space& space, const TailRule& a, const TailRule& b,
                              std::uint64_t length, Point& at) {
    if (a == b) return LevelAgreement::Whole;
    const ConstantTail* constant = std::get_if<ConstantTail>(&a);
    const TailRule* other = &b;
    if (!constant) {
        constant = std::get_if<ConstantTail>(&b);
        other = &a;
    }
    if (!constant) return LevelAgreement::None;
    if (std::holds_alternative<IdentityTail>(*other)) {
        if (constant->target.length != length) return LevelAgreement::None;
        at = constant->target;
        return LevelAgreement::Single;
    }
    if (const auto* ray = std::get_if<RayAdvanceTail>(other)) {
        auto rank = space.ray_rank(constant->target);
        if (rank && length <= std::numeric_limits<std::uint64_t>::max() - ray->step &&
            *rank == length + ray->step) {
            return LevelAgreement::Whole;
        }
    }
    return LevelAgreement::None;
}

std::optional<Point> smallest_deviation_at(const SelfMap& phi, const SelfMap& psi, std::uint64_t length) {
    const Space& space = phi.space();
    const auto keys = keys_at_length(phi, psi, length);
    Point single{};
    if (tail_agreement(space, phi.tail(), psi.tail(), length, single) == LevelAgreement::Whole) {
        for (const auto& k : keys) {
            if (phi(k) != psi(k)) return k;
        }
        return std::nullopt;
    }
    // Agreeing points on this level lie in keys plus at most one tail coincidence.
    const std::uint64_t size = space.level_size(length);
    const std::uint64_t limit = std::min<std::uint64_t>(size, keys.size() + 2);
    for (std::uint64_t i = 0; i < limit; ++i) {
        const Point v{length, i};
        if (phi(v) != psi(v)) return v;
    }
    return std::nullopt;
}

} // namespace

std::string to_string(const TailRule& tail) {
    return std::visit(overloaded{
                          [](const IdentityTail&) { return std::string("identity"); },
                          [](const ConstantTail& c) { return "constant " + to_string(c.target); },
                          [](const RayAdvanceTail& r) { return "ray-advance " + std::to_string(r.step); },
                      },
                      tail);
}

SelfMap::SelfMap(std::shared_ptr<const Space> space, TailRule tail, OverrideTable overrides)
    : space_(std::move(space)), tail_(std::move(tail)) {
    if (!space_) throw std::invalid_argument("self-map needs a space");
    if (const auto* c = std::get_if<ConstantTail>(&tail_)) {
        require_point(*space_, c->target, "constant target");
    }
    if (const auto* r = std::get_if<RayAdvanceTail>(&tail_); r && r->step == 0) {
        throw std::invalid_argument("ray-advance step must be >= 1 (use identity instead)");
    }
    for (const auto& [key, value] : overrides) {
        require_point(*space_, key, "override key");
        require_point(*space_, value, "override value");
        if (tail_value(key) != value) overrides_.emplace(key, value);
    }
}

Point SelfMap::tail_value(const Point& v) const {
    return std::visit(overloaded{
                          [&](const IdentityTail&) { return v; },
                          [&](const ConstantTail& c) { return c.target; },
                          [&](const RayAdvanceTail& r) {
                              if (v.length > std::numeric_limits<std::uint64_t>::max() - r.step) {
                                  throw ResourceLimitError("ray index overflows 64 bits");
                              }
                              return space_->canonical_ray(v.length + r.step);
                          },
                      },
                      tail_);
}

Point SelfMap::operator()(const Point& v) const {
    require_point(*space_, v, "argument");
    if (auto it = overrides_.find(v); it != overrides_.end()) return it->second;
    return tail_value(v);
}

SelfMap SelfMap::with_override(const Point& key, const Point& value) const {
    OverrideTable table = overrides_;
    table[key] = value;
    return SelfMap(space_, tail_, std::move(table));
}

SelfMap SelfMap::with_tail(TailRule tail) const {
    return SelfMap(space_, std::move(tail), overrides_);
}

std::string SelfMap::describe() const {
    std::string out = to_string(tail_);
    if (!overrides_.empty()) {
        out += " ;";
        bool first = true;
        for (const auto& [k, v] : overrides_) {
            out += first ? " " : ", ";
            out += to_string(k) + " -> " + to_string(v);
            first = false;
        }
    }
    return out;
}

bool operator==(const SelfMap& a, const SelfMap& b) {
    return same_space(a, b) && a.tail_ == b.tail_ && a.overrides_ == b.overrides_;
}

bool same_space(const SelfMap& a, const SelfMap& b) {
    return a.space_ptr() == b.space_ptr() || a.space() == b.space();
}

void require_same_space(const SelfMap& a, const SelfMap& b) {
    if (!same_space(a, b)) {
        throw SpaceMismatchError("maps live on different spaces: " + a.space().describe() + " vs " +
                                 b.space().describe());
    }
}

bool range_is_finite(const SelfMap& map) {
    return std::holds_alternative<ConstantTail>(map.tail());
}

std::optional<std::set<Point>> finite_range(const SelfMap& map) {
    const auto* c = std::get_if<ConstantTail>(&map.tail());
    if (!c) return std::nullopt;
    std::set<Point> range{c->target};
    for (const auto& [k, v] : map.overrides()) range.insert(v);
    return range;
}

std::optional<std::uint64_t> range_length_bound(const SelfMap& map) {
    auto range = finite_range(map);
    if (!range) return std::nullopt;
    std::uint64_t bound = 0;
    for (const auto& p : *range) bound = std::max(bound, p.length);
    return bound;
}

bool deviation_is_finite(const SelfMap& phi, const SelfMap& psi) {
    require_same_space(phi, psi);
    // Distinct tail rules of this family disagree on infinitely many points.
    return phi.tail() == psi.tail();
}

DeviationResult deviation(const SelfMap& phi, const SelfMap& psi) {
    if (!deviation_is_finite(phi, psi)) return InfiniteDeviation(phi, psi);
    std::set<Point> keys;
    for (const auto& [k, v] : phi.overrides()) keys.insert(k);
    for (const auto& [k, v] : psi.overrides()) keys.insert(k);
    FiniteDeviation out;
    for (const auto& k : keys) {
        if (phi(k) != psi(k)) out.points.push_back(k);
    }
    return out;
}

std::vector<Point> increasing_deviation_sequence(const SelfMap& phi, const SelfMap& psi, std::size_t n) {
    if (deviation_is_finite(phi, psi)) {
        throw PreconditionError("increasing_deviation_sequence needs an infinite deviation set");
    }
    const Space& space = phi.space();
    std::vector<Point> out;
    out.reserve(n);
    for (std::uint64_t rank = 0; out.size() < n; ++rank) {
        if (rank >= space.point_budget()) {
            throw ResourceLimitError("deviation sequence exhausted the point budget");
        }
        if (auto v = smallest_deviation_at(phi, psi, space.occupied_length(rank))) out.push_back(*v);
    }
    return out;
}

std::vector<Point> infinite_range_sequence(const SelfMap& map, std::size_t n, const std::set<Point>& excluded) {
    if (range_is_finite(map)) {
        throw PreconditionError("infinite_range_sequence needs a map of infinite range");
    }
    const Space& space = map.space();
    std::vector<Point> out;
    out.reserve(n);
    std::optional<std::uint64_t> last_image;
    auto qualifies = [&](const Point& v) {
        const Point image = map(v);
        return (!last_image || image.length > *last_image) && !excluded.contains(image);
    };
    for (std::uint64_t rank = 0; out.size() < n; ++rank) {
        if (rank >= space.point_budget()) {
            throw ResourceLimitError("infinite-range sequence exhausted the point budget");
        }
        const std::uint64_t length = space.occupied_length(rank);
        const auto keys = keys_at_length(map, map, length);
        // Past this prefix, non-key points either all fail or one of the
        // scanned non-keys already qualified.
        const std::uint64_t limit =
            std::min<std::uint64_t>(space.level_size(length), keys.size() + excluded.size() + 1);
        std::optional<Point> pick;
        for (std::uint64_t i = 0; i < limit && !pick; ++i) {
            if (qualifies(Point{length, i})) pick = Point{length, i};
        }
        if (!pick) {
            for (const auto& k : keys) {
                if (k.index >= limit && qualifies(k)) {
                    pick = k;
                    break;
                }
            }
        }
        if (pick) {
            last_image = map(*pick).length;
            out.push_back(*pick);
        }
    }
    return out;
}

} // namespace compop
