#pragma once

#include "compop/oracle.hpp"
#include "compop/selfmap.hpp"
#include "compop/space.hpp"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace compop {

struct Diagnostic {
    int line = 0;
    std::string message;
};

/// Positioned parse and validation failures of a scenario document.
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

/// An oracle cross-check contradicted a symbolic answer.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Budgets {
    std::uint64_t points = kDefaultPointBudget;
    std::uint64_t radius = 64;
    std::uint64_t family = 16;
};

// Command-line values that take precedence over the document's [budgets].
struct BudgetOverrides {
    std::optional<std::uint64_t> points;
    std::optional<std::uint64_t> radius;
    std::optional<std::uint64_t> family;
};

struct NamedMap {
    std::string name;
    SelfMap map;
    int line = 0;
};

struct Query {
    std::string kind;
    std::vector<std::string> args;
    std::string text;
    int line = 0;
};

struct Scenario {
    std::shared_ptr<const Space> space;
    Budgets budgets;
    std::vector<NamedMap> maps;
    std::vector<Query> queries;

    const SelfMap& map(const std::string& name) const;
};

/// Parses the line-oriented scenario format:
///
///   [space]    kind = path | tree | table, arity = q, levels = 0:1, 2:3, stride = s
///   [budgets]  points = N, radius = M, family = n
///   [maps]     name = identity | constant len:idx | ray-advance k [; key -> value, ...]
///   [queries]  one query per line: kind arg...
///
/// `#` starts a comment. Throws ScenarioError listing every problem found.
Scenario parse_scenario(const std::string& document, const BudgetOverrides& overrides = {});

struct RunOptions {
    bool validate = false; // attach oracle cross-checks to every query
};

/// Executes the queries in order and assembles the report document. Throws
/// ConsistencyError if an oracle disagrees with a symbolic answer.
nlohmann::ordered_json run(const Scenario& scenario, const RunOptions& options = {});

} // namespace compop
