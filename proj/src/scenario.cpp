#include "compop/scenario.hpp"

#include "compop/analysis.hpp"
#include "compop/errors.hpp"
#include "compop/funcspace.hpp"
#include "compop/topology.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace compop {

using nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

std::optional<std::uint64_t> to_u64(const std::string& s) {
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
    return v;
}

bool valid_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

std::optional<Rational> parse_rational(const std::string& s) {
    auto slash = s.find('/');
    auto num = to_u64(s.substr(0, slash));
    if (!num) return std::nullopt;
    if (slash == std::string::npos) return Rational(*num);
    auto den = to_u64(s.substr(slash + 1));
    if (!den || *den == 0) return std::nullopt;
    return Rational(boost::multiprecision::cpp_int(*num), boost::multiprecision::cpp_int(*den));
}

struct Entry {
    std::string key;
    std::string value;
    int line;
};

struct QuerySignature {
    std::size_t min_maps;
    std::size_t max_args;
    bool radius_arg;   // second argument is a radius
    bool topology_arg; // trailing uniform|essential
};

const std::map<std::string, QuerySignature>& query_kinds() {
    static const std::map<std::string, QuerySignature> kinds{
        {"classify", {2, 2, false, false}},
        {"single-norms", {1, 1, false, false}},
        {"difference-norms", {2, 2, false, false}},
        {"witness", {2, 2, false, false}},
        {"ball", {1, 2, true, false}},
        {"ball-contains", {2, 3, true, false}},
        {"component", {2, 3, false, true}},
        {"isolated", {1, 2, false, true}},
        {"path", {2, 2, false, false}},
        {"hausdorff", {0, 0, false, false}},
        {"oracle-validate", {2, 2, false, false}},
    };
    return kinds;
}

class Parser {
public:
    Parser(const std::string& document, const BudgetOverrides& overrides) : overrides_(overrides) {
        std::istringstream in(document);
        std::string raw;
        int line_no = 0;
        std::string section;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string line = trim(raw.substr(0, raw.find('#')));
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') {
                    error(line_no, "malformed section header '" + line + "'");
                    continue;
                }
                section = trim(std::string_view(line).substr(1, line.size() - 2));
                if (section != "space" && section != "maps" && section != "queries" && section != "budgets") {
                    error(line_no, "unknown section [" + section + "]");
                }
                continue;
            }
            if (section == "queries") {
                queries_.push_back(Query{{}, {}, line, line_no});
                continue;
            }
            auto eq = line.find('=');
            if (section.empty() || eq == std::string::npos) {
                error(line_no, section.empty() ? "content outside any section" : "expected 'key = value'");
                continue;
            }
            Entry e{trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)), line_no};
            if (section == "space") space_.push_back(e);
            if (section == "maps") maps_.push_back(e);
            if (section == "budgets") budgets_.push_back(e);
        }
    }

    Scenario build() {
        Scenario sc;
        sc.budgets = build_budgets();
        sc.space = build_space(sc.budgets.points);
        if (sc.space) {
            build_maps(sc);
            build_queries(sc);
        }
        if (!diagnostics_.empty()) throw ScenarioError(diagnostics_);
        return sc;
    }

private:
    void error(int line, std::string message) { diagnostics_.push_back({line, std::move(message)}); }

    Budgets build_budgets() {
        Budgets b;
        for (const auto& e : budgets_) {
            auto v = to_u64(e.value);
            if (!v || *v == 0) {
                error(e.line, "budget '" + e.key + "' needs a positive integer");
                continue;
            }
            if (e.key == "points") b.points = *v;
            else if (e.key == "radius") b.radius = *v;
            else if (e.key == "family") b.family = *v;
            else error(e.line, "unknown budget '" + e.key + "'");
        }
        if (overrides_.points) b.points = *overrides_.points;
        if (overrides_.radius) b.radius = *overrides_.radius;
        if (overrides_.family) b.family = *overrides_.family;
        return b;
    }

    std::shared_ptr<const Space> build_space(std::uint64_t budget) {
        std::map<std::string, Entry> kv;
        for (const auto& e : space_) {
            if (!kv.emplace(e.key, e).second) error(e.line, "duplicate space key '" + e.key + "'");
        }
        if (!kv.contains("kind")) {
            error(space_.empty() ? 0 : space_.front().line, "[space] needs 'kind = path | tree | table'");
            return nullptr;
        }
        const Entry kind = kv.at("kind");
        try {
            if (kind.value == "path") return std::make_shared<const Space>(Space::path(budget));
            if (kind.value == "tree") {
                std::uint64_t arity = 2;
                if (kv.contains("arity")) {
                    auto a = to_u64(kv.at("arity").value);
                    if (!a) {
                        error(kv.at("arity").line, "arity needs an integer");
                        return nullptr;
                    }
                    arity = *a;
                }
                return std::make_shared<const Space>(Space::tree(arity, budget));
            }
            if (kind.value == "table") {
                if (!kv.contains("levels")) {
                    error(kind.line, "table space needs 'levels = len:count, ...'");
                    return nullptr;
                }
                std::vector<TableLevel> levels;
                for (const auto& item : split(kv.at("levels").value, ',')) {
                    Point p;
                    try {
                        p = parse_point(item);
                    } catch (const std::invalid_argument&) {
                        error(kv.at("levels").line, "malformed level '" + item + "', expected len:count");
                        return nullptr;
                    }
                    levels.push_back({p.length, p.index});
                }
                std::uint64_t stride = 0;
                if (kv.contains("stride")) {
                    auto s = to_u64(kv.at("stride").value);
                    if (!s) {
                        error(kv.at("stride").line, "stride needs an integer");
                        return nullptr;
                    }
                    stride = *s;
                }
                return std::make_shared<const Space>(Space::table(std::move(levels), stride, budget));
            }
            error(kind.line, "unknown space kind '" + kind.value + "'");
        } catch (const std::invalid_argument& ex) {
            error(kind.line, ex.what());
        }
        return nullptr;
    }

    std::optional<Point> point_literal(const Space& space, const std::string& text, int line) {
        Point p;
        try {
            p = parse_point(text);
        } catch (const std::invalid_argument& ex) {
            error(line, ex.what());
            return std::nullopt;
        }
        if (space.count_up_to(p.length) > space.point_budget()) {
            error(line, "point " + text + " lies beyond the point budget of " +
                            std::to_string(space.point_budget()));
            return std::nullopt;
        }
        if (!space.contains(p)) {
            error(line, "point " + text + " is not a point of " + space.describe());
            return std::nullopt;
        }
        return p;
    }

    void build_maps(Scenario& sc) {
        std::set<std::string> names;
        for (const auto& e : maps_) {
            if (!valid_name(e.key)) {
                error(e.line, "invalid map name '" + e.key + "'");
                continue;
            }
            if (!names.insert(e.key).second) {
                error(e.line, "duplicate map name '" + e.key + "'");
                continue;
            }
            auto semi = e.value.find(';');
            auto tail_tokens = tokens(e.value.substr(0, semi));
            std::optional<TailRule> tail;
            if (tail_tokens.size() == 1 && tail_tokens[0] == "identity") {
                tail = IdentityTail{};
            } else if (tail_tokens.size() == 2 && tail_tokens[0] == "constant") {
                if (auto p = point_literal(*sc.space, tail_tokens[1], e.line)) tail = ConstantTail{*p};
                else continue;
            } else if (tail_tokens.size() == 2 && tail_tokens[0] == "ray-advance") {
                auto k = to_u64(tail_tokens[1]);
                if (!k || *k == 0) {
                    error(e.line, "ray-advance needs a positive step");
                    continue;
                }
                tail = RayAdvanceTail{*k};
            } else {
                error(e.line, "unknown tail rule '" + trim(e.value.substr(0, semi)) + "'");
                continue;
            }
            OverrideTable table;
            bool ok = true;
            if (semi != std::string::npos) {
                for (const auto& item : split(e.value.substr(semi + 1), ',')) {
                    if (item.empty()) continue;
                    auto arrow = item.find("->");
                    if (arrow == std::string::npos) {
                        error(e.line, "override '" + item + "' needs 'key -> value'");
                        ok = false;
                        continue;
                    }
                    auto key = point_literal(*sc.space, trim(item.substr(0, arrow)), e.line);
                    auto value = point_literal(*sc.space, trim(item.substr(arrow + 2)), e.line);
                    if (!key || !value) {
                        ok = false;
                        continue;
                    }
                    if (!table.emplace(*key, *value).second) {
                        error(e.line, "override key " + to_string(*key) + " given twice");
                        ok = false;
                    }
                }
            }
            if (!ok) continue;
            try {
                sc.maps.push_back({e.key, SelfMap(sc.space, *tail, std::move(table)), e.line});
            } catch (const std::exception& ex) {
                error(e.line, ex.what());
            }
        }
    }

    void build_queries(Scenario& sc) {
        std::set<std::string> defined;
        for (const auto& m : sc.maps) defined.insert(m.name);
        std::set<std::string> declared;
        for (const auto& e : maps_) declared.insert(e.key);
        for (auto& q : queries_) {
            auto t = tokens(q.text);
            q.kind = t.front();
            q.args.assign(t.begin() + 1, t.end());
            auto it = query_kinds().find(q.kind);
            if (it == query_kinds().end()) {
                error(q.line, "unknown query kind '" + q.kind + "'");
                continue;
            }
            const auto sig = it->second;
            const std::size_t needed = sig.min_maps + (sig.radius_arg ? 1 : 0);
            if (q.args.size() < needed || q.args.size() > std::max(sig.max_args, needed)) {
                error(q.line, "wrong number of arguments for '" + q.kind + "'");
                continue;
            }
            bool ok = true;
            for (std::size_t i = 0; i < q.args.size(); ++i) {
                const auto& a = q.args[i];
                if (sig.radius_arg && i == 1) {
                    auto r = parse_rational(a);
                    if (!r || *r <= 0) {
                        error(q.line, "radius '" + a + "' must be a positive rational like 3/2");
                        ok = false;
                    }
                } else if (sig.topology_arg && i + 1 == q.args.size() && i >= sig.min_maps) {
                    if (a != "uniform" && a != "essential") {
                        error(q.line, "topology must be 'uniform' or 'essential', got '" + a + "'");
                        ok = false;
                    }
                } else if (!declared.contains(a)) {
                    error(q.line, "query references undefined map '" + a + "'");
                    ok = false;
                }
            }
            if (ok) sc.queries.push_back(q);
        }
    }

    BudgetOverrides overrides_;
    std::vector<Entry> space_, maps_, budgets_;
    std::vector<Query> queries_;
    std::vector<Diagnostic> diagnostics_;
};

// ---------------------------------------------------------------------------
// report assembly

ordered_json to_json(const Point& p) { return to_string(p); }

ordered_json to_json(const std::vector<Point>& points) {
    ordered_json a = ordered_json::array();
    for (const auto& p : points) a.push_back(to_string(p));
    return a;
}

ordered_json to_json(const BoundedFunction& f) {
    ordered_json a = ordered_json::array();
    for (const auto& [p, z] : f.support()) a.push_back(ordered_json::array({to_string(p), to_string(z)}));
    return a;
}

ordered_json to_json(const RelationClass& r) {
    ordered_json j;
    j["class"] = to_string(r.relation);
    j["symbol"] = symbol(r.relation);
    j["equal"] = r.equal;
    return j;
}

ordered_json to_json(const NormReport& n) {
    ordered_json j;
    j["operator_norm"] = n.operator_norm;
    j["essential_norm"] = n.essential_norm;
    j["compact"] = n.compact;
    return j;
}

ordered_json render_norms(const std::vector<SupNorm>& norms) {
    ordered_json a = ordered_json::array();
    for (const auto& n : norms) a.push_back(n.render());
    return a;
}

std::string range_class(const SelfMap& m) {
    return range_is_finite(m) ? "finite-range" : "infinite-range";
}

enum class Status { Agree, Inconclusive, Disagree };

std::string status_name(Status s) {
    switch (s) {
    case Status::Agree: return "agree";
    case Status::Inconclusive: return "inconclusive";
    case Status::Disagree: return "disagree";
    }
    return "?";
}

Status combine(Status a, Status b) { return std::max(a, b); }

class Runner {
public:
    Runner(const Scenario& sc, const RunOptions& options) : sc_(sc), options_(options) {}

    ordered_json run() {
        ordered_json report;
        ordered_json header;
        header["space"] = sc_.space->describe();
        header["budgets"] = {{"points", sc_.budgets.points},
                             {"radius", sc_.budgets.radius},
                             {"family", sc_.budgets.family}};
        ordered_json maps = ordered_json::array();
        for (const auto& m : sc_.maps) maps.push_back({{"name", m.name}, {"definition", m.map.describe()}});
        header["maps"] = maps;
        header["validate"] = options_.validate;
        report["scenario"] = header;

        ordered_json records = ordered_json::array();
        for (std::size_t i = 0; i < sc_.queries.size(); ++i) records.push_back(record(i, sc_.queries[i]));
        report["records"] = records;

        ordered_json summary;
        summary["queries"] = sc_.queries.size();
        summary["errors"] = errors_;
        summary["checks"] = {{"passed", checks_passed_}, {"failed", checks_failed_}};
        summary["oracle"] = {{"agree", agree_}, {"inconclusive", inconclusive_}};
        summary["pass"] = checks_failed_ == 0;
        report["summary"] = summary;
        return report;
    }

private:
    ordered_json record(std::size_t index, const Query& q) {
        ordered_json rec;
        rec["index"] = index;
        rec["line"] = q.line;
        rec["query"] = q.text;
        rec["kind"] = q.kind;
        ordered_json maps = ordered_json::object();
        for (const auto& a : q.args) {
            for (const auto& m : sc_.maps) {
                if (m.name == a) maps[a] = m.map.describe();
            }
        }
        rec["maps"] = maps;
        checks_ = ordered_json::array();
        try {
            dispatch(q, rec);
        } catch (const ConsistencyError&) {
            throw;
        } catch (const std::exception& ex) {
            rec.erase("result");
            rec["error"] = ex.what();
            ++errors_;
        }
        if (!checks_.empty()) rec["checks"] = checks_;
        return rec;
    }

    void check(const std::string& name, bool pass) {
        checks_.push_back({{"name", name}, {"pass", pass}});
        (pass ? checks_passed_ : checks_failed_)++;
    }

    void attach_oracle(ordered_json& rec, ordered_json oracle, Status status, const Query& q) {
        oracle["status"] = status_name(status);
        rec["oracle"] = oracle;
        if (status == Status::Disagree) {
            throw ConsistencyError("line " + std::to_string(q.line) + " (" + q.text +
                                   "): oracle disagrees with the symbolic answer: " + oracle.dump());
        }
        (status == Status::Agree ? agree_ : inconclusive_)++;
    }

    const SelfMap& arg_map(const Query& q, std::size_t i) const { return sc_.map(q.args.at(i)); }

    std::optional<Topology> topology_arg(const Query& q, std::size_t maps) const {
        if (q.args.size() <= maps) return std::nullopt;
        return q.args.back() == "uniform" ? Topology::Uniform : Topology::Essential;
    }

    void dispatch(const Query& q, ordered_json& rec) {
        const auto& k = q.kind;
        ordered_json result;
        if (k == "hausdorff") {
            auto h = hausdorff_counterexample(sc_.space);
            rec["relation"] = to_json(classify(h.first.symbol, h.second.symbol));
            result["first"] = h.first.symbol.describe();
            result["second"] = h.second.symbol.describe();
            result["uniform_distance"] = h.uniform_distance;
            result["essential_distance"] = h.essential_distance;
            result["mutual_containment"] = h.mutual_containment;
            rec["result"] = result;
            check("distinct-operators", h.uniform_distance == 2);
            check("not-separated", h.mutual_containment && h.essential_distance == 0);
            if (options_.validate) pair_oracle(rec, q, h.first.symbol, h.second.symbol);
            return;
        }
        const SelfMap& a = arg_map(q, 0);
        if (k == "single-norms" || k == "ball" || k == "isolated") {
            rec["range_class"] = range_class(a);
        }
        if (k == "single-norms") {
            auto n = single_norms(a);
            rec["result"] = to_json(n);
            check("essential<=norm", n.essential_norm <= n.operator_norm);
            check("compact<=>essential=0", n.compact == (n.essential_norm == 0));
            if (options_.validate) single_oracle(rec, q, a);
            return;
        }
        if (k == "ball") {
            const Rational eps = *parse_rational(q.args.at(1));
            auto d = essential_ball(OperatorPoint{a}, eps);
            result["epsilon"] = to_string(eps);
            result["descriptor"] = {{"kind", to_string(d.kind)}, {"center", d.center ? ordered_json(q.args[0]) : ordered_json()}};
            rec["result"] = result;
            check("center-in-ball", d.contains(OperatorPoint{a}));
            if (options_.validate) single_oracle(rec, q, a);
            return;
        }
        if (k == "isolated") {
            auto topo = topology_arg(q, 1);
            for (Topology t : {Topology::Uniform, Topology::Essential}) {
                if (topo && *topo != t) continue;
                auto iso = is_isolated(OperatorPoint{a}, t);
                ordered_json j;
                j["isolated"] = iso.isolated;
                if (iso.witness) {
                    j["witness"] = iso.witness->symbol.describe();
                    check("witness-distinct-and-inside",
                          !(iso.witness->symbol == a) &&
                              ball_contains(OperatorPoint{a}, Rational(1, 2), *iso.witness));
                }
                result[to_string(t)] = j;
            }
            rec["result"] = result;
            if (options_.validate) single_oracle(rec, q, a);
            return;
        }

        // everything below takes a pair
        const SelfMap& b = (k == "ball-contains") ? arg_map(q, 2) : arg_map(q, 1);
        const RelationClass rel = classify(a, b);
        rec["relation"] = to_json(rel);
        const OperatorPoint x{a}, y{b};
        if (k == "classify") {
            result["range_finite"] = {range_is_finite(a), range_is_finite(b)};
            const auto dev = deviation(a, b);
            if (const auto* f = std::get_if<FiniteDeviation>(&dev)) {
                result["deviation"] = {{"finite", true}, {"points", to_json(f->points)}};
            } else {
                const auto w = std::get<InfiniteDeviation>(dev).take(std::min<std::uint64_t>(sc_.budgets.family, 8));
                result["deviation"] = {{"finite", false}, {"witnesses", to_json(w)}};
            }
            rec["result"] = result;
            check("symmetric", classify(b, a) == rel);
        } else if (k == "difference-norms") {
            auto n = difference_norms(a, b);
            rec["result"] = to_json(n);
            check("essential<=norm", n.essential_norm <= n.operator_norm);
            check("compact<=>essential=0", n.compact == (n.essential_norm == 0));
            check("norm=2<=>distinct", (n.operator_norm == 2) == !rel.equal);
        } else if (k == "witness") {
            auto w = norm_attainment_witness(a, b);
            result["attainment"] = {{"base", to_json(w.base)},
                                    {"function", to_json(w.witness)},
                                    {"sup_norm", w.witness_norm.render()},
                                    {"attained", w.attained.render()}};
            check("attained=2", w.attained == SupNorm{Rational(4)} && w.witness_norm == SupNorm{Rational(1)});
            const std::size_t n = sc_.budgets.family;
            ordered_json fam;
            std::optional<WitnessFamily> family;
            if (rel.relation == Relation::BothInfiniteInfiniteDeviation) {
                fam["kind"] = "chi-difference";
                family = essential_witness_sequence(a, b, n);
            } else if (rel.relation == Relation::Mixed) {
                fam["kind"] = "mixed-chi";
                family = mixed_noncompact_witness(a, b, n);
            }
            if (family) {
                fam["base_points"] = to_json(family->base_points);
                ordered_json fns = ordered_json::array();
                for (const auto& f : family->functions) fns.push_back(to_json(f));
                fam["functions"] = fns;
                check("pointwise-null", pointwise_null_certificate(a, b, *family));
                result["family"] = fam;
            } else {
                result["family"] = nullptr;
            }
            rec["result"] = result;
        } else if (k == "ball-contains") {
            const Rational eps = *parse_rational(q.args.at(1));
            auto d = essential_ball(x, eps);
            const bool contains = ball_contains(x, eps, y);
            result["epsilon"] = to_string(eps);
            result["contains"] = contains;
            result["essential_distance"] = essential_distance(x, y);
            result["descriptor"] = to_string(d.kind);
            result["descriptor_contains"] = d.contains(y);
            rec["result"] = result;
            check("descriptor-agrees", contains == d.contains(y));
        } else if (k == "component") {
            auto topo = topology_arg(q, 2);
            for (Topology t : {Topology::Uniform, Topology::Essential}) {
                if (!topo || *topo == t) result[to_string(t)] = same_component(x, y, t);
            }
            rec["result"] = result;
            const bool ess = same_component(x, y, Topology::Essential);
            check("component<=>compact-difference", ess == difference_norms(a, b).compact);
            check("component<=>distance-0", ess == (essential_distance(x, y) == 0));
        } else if (k == "path") {
            auto cert = path_certificate(x, y);
            result["valid"] = cert.valid;
            result["gamma"] = {{"[0,1)", q.args[0]}, {"1", q.args[1]}};
            ordered_json balls = ordered_json::array();
            for (const auto& c : cert.checks) {
                ordered_json j;
                j["center"] = c.center.symbol.describe();
                j["epsilon"] = to_string(c.epsilon);
                j["ball"] = to_string(c.ball.kind);
                j["contains_start"] = c.contains_start;
                j["contains_end"] = c.contains_end;
                j["preimage"] = to_string(c.preimage);
                j["open"] = c.open;
                balls.push_back(j);
            }
            result["balls"] = balls;
            rec["result"] = result;
            check("continuous", cert.valid);
        } else if (k == "oracle-validate") {
            rec["result"] = to_json(difference_norms(a, b));
            pair_oracle(rec, q, a, b);
            return;
        }
        if (options_.validate) pair_oracle(rec, q, a, b);
    }

    void pair_oracle(ordered_json& rec, const Query& q, const SelfMap& a, const SelfMap& b) {
        const NormReport sym = difference_norms(a, b);
        const std::uint64_t radius = sc_.budgets.radius;
        const std::size_t n = sc_.budgets.family;
        ordered_json o;
        Status status = Status::Agree;

        {
            ordered_json j;
            j["radius"] = radius;
            Status s = Status::Agree;
            try {
                auto r = restricted_difference_norm(a, b, radius);
                int expected = 0;
                if (!(a == b)) expected = norm_attainment_witness(a, b).base.length <= radius ? 2 : 0;
                j["combinatorial"] = r.combinatorial;
                j["exhaustive"] = r.exhaustive;
                j["joint_search"] = r.joint_search;
                j["needed_points"] = r.needed_points;
                j["patterns"] = r.patterns;
                j["expected"] = expected;
                s = r.agree() && r.value() == expected ? Status::Agree : Status::Disagree;
            } catch (const ResourceLimitError& e) {
                j["note"] = e.what();
                s = Status::Inconclusive;
            }
            j["status"] = status_name(s);
            o["restricted_norm"] = j;
            status = combine(status, s);
        }
        {
            ordered_json j;
            auto p = essential_lower_bound_probe(a, b, n);
            j["certified"] = p.certified;
            j["conclusive"] = p.conclusive;
            j["family"] = to_string(p.family);
            j["size"] = p.members.functions.size();
            j["symbolic"] = sym.essential_norm;
            if (!p.note.empty()) j["note"] = p.note;
            Status s = p.certified > sym.essential_norm ? Status::Disagree
                       : !p.conclusive                  ? Status::Inconclusive
                       : p.certified == sym.essential_norm ? Status::Agree
                                                           : Status::Disagree;
            j["status"] = status_name(s);
            o["essential_probe"] = j;
            status = combine(status, s);
        }
        {
            ordered_json j;
            auto p = compactness_probe(a, b, n, radius);
            j["verdict"] = to_string(p.verdict);
            j["family"] = p.family == ProbeFamily::None ? "chi-ray" : to_string(p.family);
            j["trace"] = render_norms(p.trace);
            j["escape_index"] = p.escape_index ? ordered_json(*p.escape_index) : ordered_json();
            j["symbolic_compact"] = sym.compact;
            if (!p.note.empty()) j["note"] = p.note;
            Status s = Status::Inconclusive;
            if (p.verdict == CompactnessVerdict::ConsistentWithCompact) s = sym.compact ? Status::Agree : Status::Disagree;
            if (p.verdict == CompactnessVerdict::WitnessAgainstCompact) s = sym.compact ? Status::Disagree : Status::Agree;
            j["status"] = status_name(s);
            o["compactness_probe"] = j;
            status = combine(status, s);
        }
        {
            ordered_json j;
            Status s = Status::Agree;
            try {
                const bool agrees = deviation_sampling_agrees(a, b, radius);
                j["agrees"] = agrees;
                s = agrees ? Status::Agree : Status::Disagree;
            } catch (const ResourceLimitError& e) {
                j["note"] = e.what();
                s = Status::Inconclusive;
            }
            j["status"] = status_name(s);
            o["deviation_sampling"] = j;
            status = combine(status, s);
        }
        attach_oracle(rec, o, status, q);
    }

    void single_oracle(ordered_json& rec, const Query& q, const SelfMap& a) {
        const NormReport sym = single_norms(a);
        const std::uint64_t radius = sc_.budgets.radius;
        ordered_json o;
        Status status = Status::Agree;
        {
            ordered_json j;
            auto p = single_essential_probe(a, sc_.budgets.family);
            j["certified"] = p.certified;
            j["conclusive"] = p.conclusive;
            j["family"] = to_string(p.family);
            j["symbolic"] = sym.essential_norm;
            if (!p.note.empty()) j["note"] = p.note;
            Status s = !p.conclusive ? Status::Inconclusive
                       : p.certified == sym.essential_norm ? Status::Agree
                                                           : Status::Disagree;
            j["status"] = status_name(s);
            o["essential_probe"] = j;
            status = combine(status, s);
        }
        {
            ordered_json j;
            const auto bound = range_length_bound(a);
            const std::uint64_t limit = bound ? *bound : radius / 2;
            j["radius"] = radius;
            j["bound"] = limit;
            Status s = Status::Agree;
            try {
                auto e = range_escape_probe(a, radius, limit);
                j["escaped"] = e.escaped;
                if (e.witness) j["witness"] = to_json(*e.witness);
                if (bound) s = e.escaped ? Status::Disagree : Status::Agree;
                else s = e.escaped ? Status::Agree : Status::Inconclusive;
            } catch (const ResourceLimitError& e) {
                j["note"] = e.what();
                s = Status::Inconclusive;
            }
            j["status"] = status_name(s);
            o["range_escape"] = j;
            status = combine(status, s);
        }
        attach_oracle(rec, o, status, q);
    }

    const Scenario& sc_;
    RunOptions options_;
    ordered_json checks_;
    std::size_t errors_ = 0;
    std::size_t checks_passed_ = 0;
    std::size_t checks_failed_ = 0;
    std::size_t agree_ = 0;
    std::size_t inconclusive_ = 0;
};

std::string join_diagnostics(const std::vector<Diagnostic>& ds) {
    std::string out;
    for (const auto& d : ds) {
        if (!out.empty()) out += '\n';
        out += "line " + std::to_string(d.line) + ": " + d.message;
    }
    return out;
}

} // namespace

ScenarioError::ScenarioError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

const SelfMap& Scenario::map(const std::string& name) const {
    for (const auto& m : maps) {
        if (m.name == name) return m.map;
    }
    throw std::out_of_range("undefined map '" + name + "'");
}

Scenario parse_scenario(const std::string& document, const BudgetOverrides& overrides) {
    return Parser(document, overrides).build();
}

nlohmann::ordered_json run(const Scenario& scenario, const RunOptions& options) {
    return Runner(scenario, options).run();
}

} // namespace compop
