#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace compop {

/// A point of a rooted, locally finite space.
///
/// The identity token is the pair (length, index): `index` orders the points
/// that share a length. Ordering is lexicographic, so sorting points sorts them
/// by (length, id).
struct Point {
    std::uint64_t length = 0;
    std::uint64_t index = 0;

    friend auto operator<=>(const Point&, const Point&) = default;
};

std::string to_string(const Point& p);

// Parses the `len:index` literal. Throws std::invalid_argument on malformed input.
Point parse_point(const std::string& text);

inline constexpr std::uint64_t kDefaultPointBudget = 1'000'000;

struct PathSpace {
    friend bool operator==(const PathSpace&, const PathSpace&) = default;
};

struct HomogeneousTree {
    std::uint64_t arity = 2;
    friend bool operator==(const HomogeneousTree&, const HomogeneousTree&) = default;
};

struct TableLevel {
    std::uint64_t length = 0;
    std::uint64_t count = 1;
    friend bool operator==(const TableLevel&, const TableLevel&) = default;
};

/// Explicit per-length point counts. Past the last declared level the last
/// level's count is replicated every `stride` lengths.
struct TableSpace {
    std::vector<TableLevel> levels;
    std::uint64_t stride = 1;
    friend bool operator==(const TableSpace&, const TableSpace&) = default;
};

using SpaceKind = std::variant<PathSpace, HomogeneousTree, TableSpace>;

/// Unbounded, locally finite rooted space enumerated lazily by length.
///
/// Only lengths are modelled; the metric between two non-root points is never
/// needed. Values are immutable after construction.
class Space {
public:
    static Space path(std::uint64_t budget = kDefaultPointBudget);
    static Space tree(std::uint64_t arity, std::uint64_t budget = kDefaultPointBudget);
    // `stride` 0 selects the gap between the last two declared lengths (1 when
    // only the root level is declared).
    static Space table(std::vector<TableLevel> levels, std::uint64_t stride = 0,
                       std::uint64_t budget = kDefaultPointBudget);

    const SpaceKind& kind() const { return kind_; }
    std::uint64_t point_budget() const { return budget_; }

    Point root() const { return Point{0, 0}; }
    bool contains(const Point& p) const;

    // Number of points of length exactly `length` (0 when unoccupied). Saturates.
    std::uint64_t level_size(std::uint64_t length) const;
    // Number of points of length <= `max_length`. Saturates at UINT64_MAX.
    std::uint64_t count_up_to(std::uint64_t max_length) const;

    // n-th occupied length in increasing order; occupied_length(0) == 0.
    std::uint64_t occupied_length(std::uint64_t n) const;
    // Rank of `length` among occupied lengths, if occupied.
    std::optional<std::uint64_t> occupied_rank(std::uint64_t length) const;

    /// Points of length <= max_length, sorted by (length, id).
    /// Throws ResourceLimitError past the point budget.
    std::vector<Point> points_up_to(std::uint64_t max_length) const;

    /// Visits points in (length, id) order while `visit` returns true and the
    /// length stays <= max_length. Throws ResourceLimitError once more than the
    /// budget's worth of points would have been visited.
    void for_each_point(std::uint64_t max_length,
                        const std::function<bool(const Point&)>& visit) const;

    /// Smallest-id point at the n-th occupied length.
    Point canonical_ray(std::uint64_t n) const;
    std::optional<std::uint64_t> ray_rank(const Point& p) const;

    std::string describe() const;

    friend bool operator==(const Space& a, const Space& b) {
        return a.kind_ == b.kind_ && a.budget_ == b.budget_;
    }

private:
    Space(SpaceKind kind, std::uint64_t budget) : kind_(std::move(kind)), budget_(budget) {}

    SpaceKind kind_;
    std::uint64_t budget_;
};

} // namespace compop
