// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "compop/analysis.hpp"
#include "compop/oracle.hpp"
#include "compop/scenario.hpp"
#include "compop/topology.hpp"

#include "corpus.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace compop;
using namespace testkit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (ok) return;
        pass = false;
        if (failures.size() < 5) failures.push_back(what);
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string pair_name(const SelfMap& a, const SelfMap& b) {
    return "[" + a.describe() + "] vs [" + b.describe() + "] on " + a.space().describe();
}

struct Corpus {
    std::shared_ptr<const Space> space;
    std::vector<SelfMap> maps;
    std::uint64_t lo;
    std::uint64_t hi;
    std::uint64_t max_radius;
};

std::vector<Corpus> corpora() {
    const auto p = path_space();
    const auto t = tree_space();
    auto path_maps = curated_path_maps(p);
    for (auto& m : random_corpus(p, 24, 2024)) {
        bool fresh = true;
        for (const auto& x : path_maps) fresh = fresh && !(x == m);
        if (fresh) path_maps.push_back(m);
    }
    return {{p, path_maps, 6, 14, 9}, {t, random_corpus(t, 24, 2025), 4, 7, 5}};
}

Relation expected_relation(const Corpus& c, const SelfMap& a, const SelfMap& b) {
    switch (brute_relation(a, b, c.lo, c.hi)) {
    case BruteRelation::BothFinite: return Relation::BothFiniteRange;
    case BruteRelation::Mixed: return Relation::Mixed;
    case BruteRelation::FiniteDeviation: return Relation::BothInfiniteFiniteDeviation;
    case BruteRelation::InfiniteDeviation: return Relation::BothInfiniteInfiniteDeviation;
    }
    return Relation::Mixed;
}

Rational brute_sup_squared(const BoundedFunction& f) {
    Rational best = 0;
    for (const auto& [p, z] : f.support()) best = std::max(best, z.squared_modulus());
    return best;
}

// ---------------------------------------------------------------------------

Outcome norm_theorem() {
    Outcome out;
    const auto t0 = Clock::now();
    std::size_t pairs = 0;
    for (const auto& c : corpora()) {
        std::size_t here = 0;
        for (std::size_t i = 0; i < c.maps.size() && here < 60; ++i) {
            for (std::size_t j = i + 1; j < c.maps.size() && here < 60; ++j, ++here) {
                const auto& a = c.maps[i];
                const auto& b = c.maps[j];
                const auto w = norm_attainment_witness(a, b);
                // recompute both quantities by direct evaluation
                Rational best = 0;
                for (const auto& v : c.space->points_up_to(w.base.length)) {
                    best = std::max(best, (w.witness(a(v)) - w.witness(b(v))).squared_modulus());
                }
                const bool ok = brute_sup_squared(w.witness) == 1 && w.witness_norm.squared == 1 && best == 4 &&
                                w.attained.squared == 4 && difference_norms(a, b).operator_norm == 2;
                out.expect(ok, pair_name(a, b));
            }
        }
        pairs += here;
    }
    const double secs = seconds_since(t0);
    out.expect(pairs >= 100, "too few pairs");
    out.expect(secs < 10.0, "runtime over 10 s");
    out.detail = std::to_string(pairs) + " pairs, " + std::to_string(secs) + " s";
    return out;
}

Outcome essential_trichotomy() {
    Outcome out;
    const auto p = path_space();
    const auto t = tree_space();
    const auto ray5 = p->canonical_ray(5);
    std::vector<std::pair<SelfMap, SelfMap>> suite{
        {constant(p, {0, 0}), constant(p, ray5)},
        {constant(p, {0, 0}), constant(p, {0, 0}, {{{1, 0}, {2, 0}}, {{2, 0}, {3, 0}}})},
        {constant(t, {1, 1}), constant(t, {2, 3}, {{{0, 0}, {4, 0}}})},
        {identity(p), constant(p, {0, 0})},
        {ray_advance(p, 2), constant(p, {3, 0}, {{{0, 0}, {0, 0}}})},
        {identity(t), constant(t, {0, 0})},
        {identity(p), identity(p, {{{0, 0}, ray5}})},
        {ray_advance(p, 1), ray_advance(p, 1, {{{0, 0}, {0, 0}}, {{4, 0}, {2, 0}}})},
        {ray_advance(t, 1, {{{1, 1}, {0, 0}}}), ray_advance(t, 1)},
        {identity(p), ray_advance(p, 1)},
        {ray_advance(p, 1), ray_advance(p, 2)},
        {identity(t), ray_advance(t, 1)},
        {identity(t, {{{2, 2}, {0, 0}}}), ray_advance(t, 3)},
    };
    const std::vector<Corpus> cs{{p, {}, 6, 14, 0}, {t, {}, 4, 7, 0}};
    std::set<Relation> covered;
    for (const auto& [a, b] : suite) {
        const Corpus& c = a.space() == *p ? cs[0] : cs[1];
        const Relation rel = expected_relation(c, a, b);
        covered.insert(rel);
        const int expected = rel == Relation::BothInfiniteInfiniteDeviation ? 2 : rel == Relation::Mixed ? 1 : 0;
        const auto probe = essential_lower_bound_probe(a, b, 16);
        out.expect(classify(a, b).relation == rel && difference_norms(a, b).essential_norm == expected &&
                       probe.conclusive && probe.certified == expected,
                   pair_name(a, b));
    }
    out.expect(covered.size() == 4, "not all relations covered");
    out.detail = std::to_string(suite.size()) + " pairs, " + std::to_string(covered.size()) + " relations, n = 16";
    return out;
}

Outcome compactness_equivalence() {
    Outcome out;
    std::size_t pairs = 0;
    for (const auto& c : corpora()) {
        for (const auto& a : c.maps) {
            for (const auto& b : c.maps) {
                ++pairs;
                const bool by_norms = difference_norms(a, b).compact;
                const bool by_class = is_compact_relation(classify(a, b).relation);
                const bool by_distance = essential_distance(OperatorPoint{a}, OperatorPoint{b}) == 0;
                const bool by_component = same_component(OperatorPoint{a}, OperatorPoint{b}, Topology::Essential);
                const bool by_brute = is_compact_relation(expected_relation(c, a, b));
                out.expect(by_norms == by_class && by_class == by_distance && by_distance == by_component &&
                               by_component == by_brute,
                           pair_name(a, b));
            }
        }
    }
    out.detail = std::to_string(pairs) + " ordered pairs";
    return out;
}

Outcome oracle_agreement() {
    Outcome out;
    const auto t0 = Clock::now();
    std::size_t instances = 0;
    for (const auto& c : corpora()) {
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < c.maps.size() && pairs < 40; ++i) {
            for (std::size_t j = i; j < c.maps.size() && pairs < 40; j += 3, ++pairs) {
                const auto& a = c.maps[i];
                const auto& b = c.maps[j];
                const auto dev = brute_deviation(a, b, c.max_radius);
                const std::optional<std::uint64_t> first =
                    dev.empty() ? std::nullopt : std::optional<std::uint64_t>(dev.front().length);
                int previous = 0;
                for (std::uint64_t m = 0; m <= c.max_radius; ++m, ++instances) {
                    const auto r = restricted_difference_norm(a, b, m);
                    const int expected = first && m >= *first ? 2 : 0;
                    out.expect(r.agree() && r.value() >= previous && r.value() == expected,
                               pair_name(a, b) + " at M = " + std::to_string(m));
                    previous = r.value();
                }
                if (!(a == b) && first) out.expect(difference_norms(a, b).operator_norm == 2, pair_name(a, b));
            }
        }
    }
    const double secs = seconds_since(t0);
    out.expect(instances >= 200, "too few instances");
    out.expect(secs < 60.0, "runtime over 60 s");
    out.detail = std::to_string(instances) + " (pair, M) instances, " + std::to_string(secs) + " s";
    return out;
}

Outcome ball_table() {
    Outcome out;
    const auto p = path_space();
    const Corpus c{p, {}, 6, 14, 0};
    const OperatorPoint compact_center{constant(p, {0, 0})};
    const OperatorPoint noncompact_center{identity(p)};
    const std::vector<std::pair<Rational, std::pair<BallKind, BallKind>>> table{
        {Rational(1, 2), {BallKind::CompactClass, BallKind::DotClass}},
        {Rational(1), {BallKind::CompactClass, BallKind::DotClass}},
        {Rational(3, 2), {BallKind::All, BallKind::DotClassPlusCompacts}},
        {Rational(2), {BallKind::All, BallKind::DotClassPlusCompacts}},
        {Rational(5, 2), {BallKind::All, BallKind::All}},
    };
    auto candidates = corpora()[0].maps;
    candidates.push_back(identity(p, {{{3, 0}, {0, 0}}}));
    candidates.push_back(identity(p, {{{0, 0}, {9, 0}}, {{1, 0}, {1, 0}}}));
    std::size_t checks = 0;
    for (const auto& [eps, kinds] : table) {
        for (const auto& [center, kind] : {std::pair{compact_center, kinds.first}, std::pair{noncompact_center, kinds.second}}) {
            const auto d = essential_ball(center, eps);
            out.expect(d.kind == kind, center.symbol.describe() + " eps " + to_string(eps));
            for (const auto& m : candidates) {
                ++checks;
                const OperatorPoint y{m};
                const bool y_compact = brute_range_finite(m, c.lo, c.hi);
                const Relation rel = expected_relation(c, center.symbol, m);
                bool member = true;
                switch (kind) {
                case BallKind::CompactClass: member = y_compact; break;
                case BallKind::DotClass: member = rel == Relation::BothInfiniteFiniteDeviation; break;
                case BallKind::DotClassPlusCompacts:
                    member = y_compact || rel == Relation::BothInfiniteFiniteDeviation;
                    break;
                case BallKind::All: member = true; break;
                }
                out.expect(ball_contains(center, eps, y) == member && d.contains(y) == member,
                           m.describe() + " in ball(" + center.symbol.describe() + ", " + to_string(eps) + ")");
            }
        }
    }
    out.expect(candidates.size() >= 30, "too few candidates");
    out.detail = "10 balls x " + std::to_string(candidates.size()) + " candidates";
    return out;
}

Outcome topology_certificates() {
    Outcome out;
    std::size_t maps = 0;
    for (const auto& c : corpora()) {
        const auto h = hausdorff_counterexample(c.space);
        out.expect(!(h.first == h.second) && h.uniform_distance == 2 && h.essential_distance == 0 &&
                       h.mutual_containment && ball_contains(h.first, Rational(1, 2), h.second) &&
                       ball_contains(h.second, Rational(1, 2), h.first),
                   "hausdorff on " + c.space->describe());
        for (const auto& m : c.maps) {
            ++maps;
            const OperatorPoint x{m};
            const auto u = is_isolated(x, Topology::Uniform);
            const auto e = is_isolated(x, Topology::Essential);
            bool ok = u.isolated && !e.isolated && e.witness.has_value();
            if (ok) {
                const auto rel = classify(m, e.witness->symbol);
                ok = !rel.equal && is_compact_relation(rel.relation) &&
                     ball_contains(x, Rational(1, 1000), *e.witness) &&
                     uniform_distance(x, *e.witness) == 2;
            }
            out.expect(ok, "isolation of " + m.describe());
        }
    }
    out.detail = "hausdorff on 2 spaces, isolation for " + std::to_string(maps) + " maps";
    return out;
}

Outcome equivalence_laws() {
    Outcome out;
    std::size_t triples = 0;
    for (const auto& c : corpora()) {
        std::vector<SelfMap> finite, infinite;
        for (const auto& m : c.maps) (range_is_finite(m) ? finite : infinite).push_back(m);
        const auto laws = [&](const std::vector<SelfMap>& set, Relation r, const std::string& name) {
            const auto rel = [&](const SelfMap& a, const SelfMap& b) { return classify(a, b).relation == r; };
            for (const auto& a : set) {
                out.expect(rel(a, a), name + " reflexive at " + a.describe());
                for (const auto& b : set) {
                    out.expect(rel(a, b) == rel(b, a), name + " symmetric");
                    for (const auto& d : set) {
                        ++triples;
                        out.expect(!(rel(a, b) && rel(b, d)) || rel(a, d), name + " transitive");
                    }
                }
            }
        };
        laws(finite, Relation::BothFiniteRange, "both-finite-range");
        laws(infinite, Relation::BothInfiniteFiniteDeviation, "finite-deviation");
        for (const auto& a : c.maps) {
            for (const auto& b : c.maps) {
                for (const auto& d : c.maps) {
                    ++triples;
                    const OperatorPoint x{a}, y{b}, z{d};
                    out.expect(essential_distance(x, z) <= essential_distance(x, y) + essential_distance(y, z),
                               "triangle");
                }
            }
        }
        out.expect(!finite.empty() && !infinite.empty(), "corpus lacks a range class");
    }
    out.detail = std::to_string(triples) + " triples";
    return out;
}

Outcome compactness_traces() {
    Outcome out;
    std::size_t counts[3] = {0, 0, 0};
    const std::size_t n = 16;
    for (const auto& c : corpora()) {
        const std::uint64_t radius = c.space->describe() == "path" ? 10 : 4;
        for (const auto& a : c.maps) {
            for (const auto& b : c.maps) {
                if (a == b) continue;
                const Relation rel = expected_relation(c, a, b);
                const auto probe = compactness_probe(a, b, n, radius);
                bool ok = probe.trace.size() == n;
                if (rel == Relation::BothInfiniteFiniteDeviation) {
                    ++counts[0];
                    // escape index recomputed from the deviation images
                    std::uint64_t escape = 0;
                    for (const auto& v : brute_deviation(a, b, c.hi)) {
                        for (const Point& img : {a(v), b(v)}) {
                            if (const auto r = c.space->ray_rank(img)) escape = std::max(escape, *r + 1);
                        }
                    }
                    ok = ok && probe.escape_index == escape && escape < n &&
                         probe.verdict == CompactnessVerdict::ConsistentWithCompact;
                    for (std::size_t k = escape; ok && k < n; ++k) ok = probe.trace[k].squared == 0;
                } else if (rel == Relation::Mixed) {
                    ++counts[1];
                    ok = ok && probe.verdict == CompactnessVerdict::WitnessAgainstCompact;
                    for (const auto& t : probe.trace) ok = ok && t.squared >= 1;
                } else if (rel == Relation::BothInfiniteInfiniteDeviation) {
                    ++counts[2];
                    ok = ok && probe.verdict == CompactnessVerdict::WitnessAgainstCompact;
                    for (const auto& t : probe.trace) ok = ok && t.squared == 4;
                } else {
                    continue;
                }
                out.expect(ok, pair_name(a, b));
            }
        }
    }
    out.expect(counts[0] > 0 && counts[1] > 0 && counts[2] > 0, "a relation is missing from the corpus");
    out.detail = std::to_string(counts[0]) + " finite-deviation, " + std::to_string(counts[1]) + " mixed, " +
                 std::to_string(counts[2]) + " infinite-deviation pairs";
    return out;
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const fs::path& scenario, const fs::path& out) {
    const std::string cmd = std::string("\"") + COMPOP_CLI + "\" --validate --scenario \"" + scenario.string() +
                            "\" --out \"" + out.string() + "\"";
    return std::system(cmd.c_str());
}

Outcome cli_round_trip() {
    Outcome out;
    const fs::path data = COMPOP_DATA_DIR;
    const fs::path reference = data / "reference.scn";
    const fs::path work = fs::current_path() / "acceptance_cli";
    fs::create_directories(work);

    out.expect(run_cli(reference, work / "a.json") == 0, "cli run 1");
    out.expect(run_cli(reference, work / "b.json") == 0, "cli run 2");
    const std::string a = slurp(work / "a.json");
    out.expect(!a.empty() && a == slurp(work / "b.json"), "repeat runs differ");
    out.expect(a == slurp(data / "reference.json"), "report differs from the stored reference");

    const auto base = nlohmann::ordered_json::parse(a);
    std::set<std::string> kinds;
    for (const auto& r : base["records"]) kinds.insert(r["kind"].get<std::string>());
    out.expect(kinds.size() == 11, "reference scenario misses a query kind");
    out.expect(base["summary"]["pass"] == true, "reference summary fails");

    const std::string doc = slurp(reference);
    const auto scenario = parse_scenario(doc);
    std::size_t mutations = 0;
    std::size_t flipped = 0;
    for (const auto& named : scenario.maps) {
        // one override at a point no definition touches, sent somewhere new
        const Point key{9, 0};
        const Point value = named.map(key) == Point{0, 0} ? Point{1, 0} : Point{0, 0};
        std::istringstream in(doc);
        std::ostringstream mutated;
        std::string line;
        for (int no = 1; std::getline(in, line); ++no) {
            if (no == named.line) {
                line += (line.find(';') == std::string::npos ? " ; " : ", ") + to_string(key) + " -> " +
                        to_string(value);
            }
            mutated << line << '\n';
        }
        const fs::path scn = work / ("mutated_" + named.name + ".scn");
        const fs::path json = work / ("mutated_" + named.name + ".json");
        std::ofstream(scn, std::ios::binary) << mutated.str();
        ++mutations;
        if (run_cli(scn, json) != 0) {
            out.expect(false, "cli failed on mutation of " + named.name);
            continue;
        }
        const auto m = nlohmann::ordered_json::parse(slurp(json));
        const auto& before = base["records"];
        const auto& after = m["records"];
        out.expect(before.size() == after.size(), "record count changed");
        for (std::size_t i = 0; i < std::min(before.size(), after.size()); ++i) {
            const auto& args = scenario.queries[i].args;
            const bool depends = std::find(args.begin(), args.end(), named.name) != args.end();
            const bool changed = before[i].dump() != after[i].dump();
            flipped += changed;
            out.expect(depends == changed, "mutating " + named.name + " vs record " + std::to_string(i));
        }
    }
    out.detail = std::to_string(base["records"].size()) + " records, " + std::to_string(mutations) +
                 " mutations, " + std::to_string(flipped) + " records flipped";
    return out;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"norm of a difference is 2", norm_theorem},
        {"essential norm trichotomy", essential_trichotomy},
        {"compactness equivalence", compactness_equivalence},
        {"oracle agreement", oracle_agreement},
        {"essential ball table", ball_table},
        {"topology certificates", topology_certificates},
        {"equivalence laws and triangle inequality", equivalence_laws},
        {"compactness probe traces", compactness_traces},
        {"cli round trip", cli_round_trip},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.failures.push_back(std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (o.pass ? "PASS" : "FAIL")
                  << " (" << o.detail << ")\n";
        for (const auto& f : o.failures) std::cout << "    " << f << '\n';
        failed += !o.pass;
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? 0 : 1;
}
