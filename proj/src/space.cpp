#include "compop/space.hpp"

#include "compop/errors.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace compop {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > kSaturated / b ? kSaturated : a * b;
}

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
        throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
    }
    return value;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

} // namespace

std::string to_string(const Point& p) {
    return std::to_string(p.length) + ":" + std::to_string(p.index);
}

Point parse_point(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("malformed point literal '" + text + "', expected len:index");
    }
    try {
        return Point{parse_u64(std::string_view(text).substr(0, colon)),
                     parse_u64(std::string_view(text).substr(colon + 1))};
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed point literal '" + text + "', expected len:index");
    }
}

Space Space::path(std::uint64_t budget) {
    return Space(PathSpace{}, budget);
}

Space Space::tree(std::uint64_t arity, std::uint64_t budget) {
    if (arity < 2) {
        throw std::invalid_argument("homogeneous tree needs arity >= 2");
    }
    return Space(HomogeneousTree{arity}, budget);
}

Space Space::table(std::vector<TableLevel> levels, std::uint64_t stride, std::uint64_t budget) {
    if (levels.empty() || levels.front().length != 0 || levels.front().count != 1) {
        throw std::invalid_argument("table space must declare exactly one point at length 0");
    }
    for (std::size_t i = 1; i < levels.size(); ++i) {
        if (levels[i].length <= levels[i - 1].length) {
            throw std::invalid_argument("table space levels must have strictly increasing lengths");
        }
        if (levels[i].count == 0) {
            throw std::invalid_argument("table space levels must be non-empty");
        }
    }
    if (stride == 0) {
        stride = levels.size() > 1 ? levels.back().length - levels[levels.size() - 2].length : 1;
    }
    return Space(TableSpace{std::move(levels), stride}, budget);
}

bool Space::contains(const Point& p) const {
    return p.index < level_size(p.length);
}

std::uint64_t Space::level_size(std::uint64_t length) const {
    return std::visit(
        overloaded{
            [](const PathSpace&) -> std::uint64_t { return 1; },
            [&](const HomogeneousTree& t) -> std::uint64_t {
                std::uint64_t n = 1;
                for (std::uint64_t i = 0; i < length && n != kSaturated; ++i) n = sat_mul(n, t.arity);
                return n;
            },
            [&](const TableSpace& t) -> std::uint64_t {
                auto rank = occupied_rank(length);
                if (!rank) return 0;
                return *rank < t.levels.size() ? t.levels[*rank].count : t.levels.back().count;
            },
        },
        kind_);
}

std::uint64_t Space::count_up_to(std::uint64_t max_length) const {
    return std::visit(
        overloaded{
            [&](const PathSpace&) { return sat_add(max_length, 1); },
            [&](const HomogeneousTree& t) {
                std::uint64_t total = 0;
                std::uint64_t level = 1;
                for (std::uint64_t i = 0; i <= max_length; ++i) {
                    total = sat_add(total, level);
                    if (total == kSaturated || i == kSaturated) break;
                    level = sat_mul(level, t.arity);
                }
                return total;
            },
            [&](const TableSpace& t) {
                std::uint64_t total = 0;
                for (const auto& lvl : t.levels) {
                    if (lvl.length > max_length) return total;
                    total = sat_add(total, lvl.count);
                }
                const auto last = t.levels.back();
                std::uint64_t tail_levels = (max_length - last.length) / t.stride;
                return sat_add(total, sat_mul(tail_levels, last.count));
            },
        },
        kind_);
}

std::uint64_t Space::occupied_length(std::uint64_t n) const {
    if (const auto* t = std::get_if<TableSpace>(&kind_)) {
        const std::uint64_t declared = t->levels.size();
        if (n < declared) return t->levels[n].length;
        const std::uint64_t steps = n - declared + 1;
        const std::uint64_t offset = sat_mul(steps, t->stride);
        const std::uint64_t length = sat_add(t->levels.back().length, offset);
        if (offset == kSaturated || length == kSaturated) {
            throw ResourceLimitError("occupied length overflows 64 bits");
        }
        return length;
    }
    return n;
}

std::optional<std::uint64_t> Space::occupied_rank(std::uint64_t length) const {
    if (const auto* t = std::get_if<TableSpace>(&kind_)) {
        const auto& levels = t->levels;
        const auto last = levels.back().length;
        if (length <= last) {
            auto it = std::lower_bound(levels.begin(), levels.end(), length,
                                       [](const TableLevel& l, std::uint64_t len) { return l.length < len; });
            if (it == levels.end() || it->length != length) return std::nullopt;
            return static_cast<std::uint64_t>(it - levels.begin());
        }
        if ((length - last) % t->stride != 0) return std::nullopt;
        return levels.size() - 1 + (length - last) / t->stride;
    }
    return length;
}

void Space::for_each_point(std::uint64_t max_length,
                           const std::function<bool(const Point&)>& visit) const {
    std::uint64_t visited = 0;
    for (std::uint64_t rank = 0;; ++rank) {
        const std::uint64_t length = occupied_length(rank);
        if (length > max_length) return;
        const std::uint64_t size = level_size(length);
        for (std::uint64_t i = 0; i < size; ++i) {
            if (++visited > budget_) {
                throw ResourceLimitError("enumeration exceeds the point budget of " +
                                         std::to_string(budget_) + " points");
            }
            if (!visit(Point{length, i})) return;
        }
        if (length == max_length) return;
    }
}

std::vector<Point> Space::points_up_to(std::uint64_t max_length) const {
    const std::uint64_t count = count_up_to(max_length);
    if (count > budget_) {
        throw ResourceLimitError("points_up_to(" + std::to_string(max_length) + ") needs " +
                                 (count == kSaturated ? std::string("more than 2^64") : std::to_string(count)) +
                                 " points, budget is " + std::to_string(budget_));
    }
    std::vector<Point> out;
    out.reserve(count);
    for_each_point(max_length, [&](const Point& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

Point Space::canonical_ray(std::uint64_t n) const {
    // ray(n) is preceded by at least n points in the enumeration order
    if (n >= budget_) {
        throw ResourceLimitError("canonical_ray(" + std::to_string(n) + ") exceeds the point budget of " +
                                 std::to_string(budget_));
    }
    return Point{occupied_length(n), 0};
}

std::optional<std::uint64_t> Space::ray_rank(const Point& p) const {
    if (p.index != 0) return std::nullopt;
    return occupied_rank(p.length);
}

std::string Space::describe() const {
    return std::visit(
        overloaded{
            [](const PathSpace&) { return std::string("path"); },
            [](const HomogeneousTree& t) { return "tree(" + std::to_string(t.arity) + ")"; },
            [](const TableSpace& t) {
                std::ostringstream os;
                os << "table(";
                for (std::size_t i = 0; i < t.levels.size(); ++i) {
                    if (i) os << ',';
                    os << t.levels[i].length << ':' << t.levels[i].count;
                }
                os << ";stride=" << t.stride << ')';
                return os.str();
            },
        },
        kind_);
}

} // namespace compop
