#include "compop/scenario.hpp"

#include <doctest.h>

using namespace compop;

namespace {

const char* kMinimal = R"(
[space]
kind = path

[maps]
id = identity
id_pert = identity ; 0:0 -> 5:0

[queries]
classify id id_pert
)";

std::vector<Diagnostic> diagnostics_of(const std::string& doc) {
    try {
        parse_scenario(doc);
    } catch (const ScenarioError& e) {
        return e.diagnostics();
    }
    return {};
}

} // namespace

TEST_CASE("minimal scenario") {
    const auto sc = parse_scenario(kMinimal);
    CHECK(sc.space->describe() == "path");
    CHECK(sc.maps.size() == 2);
    REQUIRE(sc.queries.size() == 1);
    CHECK(sc.queries[0].kind == "classify");
    CHECK(sc.queries[0].args == std::vector<std::string>{"id", "id_pert"});
    CHECK(sc.queries[0].line == 10);

    const auto report = run(sc);
    const auto& rec = report["records"][0];
    CHECK(rec["relation"]["symbol"] == "≐");
    CHECK(rec["result"]["deviation"]["points"] == nlohmann::ordered_json::array({"0:0"}));
    CHECK(report["summary"]["pass"] == true);
    CHECK_FALSE(rec.contains("oracle"));
}

TEST_CASE("duplicate map name names the line") {
    const auto d = diagnostics_of("[space]\nkind = path\n[maps]\na = identity\na = identity\n");
    REQUIRE(d.size() == 1);
    CHECK(d[0].line == 5);
    CHECK(d[0].message.find("duplicate") != std::string::npos);
}

TEST_CASE("override beyond the point budget") {
    const auto d = diagnostics_of("[space]\nkind = tree\n[budgets]\npoints = 64\n[maps]\na = identity ; 9:0 -> 0:0\n");
    REQUIRE(d.size() == 1);
    CHECK(d[0].line == 6);
    CHECK(d[0].message.find("budget") != std::string::npos);
}

TEST_CASE("every validation error is reported") {
    const auto d = diagnostics_of(R"([space]
kind = path
[maps]
a = wobble
b = constant 1x
c = identity ; 0:0 => 1:0
d = ray-advance 0
[queries]
classify a nope
teleport a
ball a 0
component a a sideways
)");
    std::vector<int> lines;
    for (const auto& x : d) lines.push_back(x.line);
    CHECK(lines == std::vector<int>{4, 5, 6, 7, 9, 10, 11, 12});
}

TEST_CASE("structural errors") {
    const auto stray = diagnostics_of("kind = path\n");
    REQUIRE_FALSE(stray.empty());
    CHECK(stray[0].line == 1);
    CHECK(stray[0].message.find("outside") != std::string::npos);
    CHECK(diagnostics_of("[space]\nkind = moebius\n").size() == 1);
    const auto header = diagnostics_of("[space\nkind = path\n");
    REQUIRE_FALSE(header.empty());
    CHECK(header[0].message.find("section header") != std::string::npos);
    CHECK(diagnostics_of("[space]\nkind = path\n[extras]\n").size() == 1);
    CHECK(diagnostics_of("[space]\nkind = table\nlevels = 0:1, 3:0\n").size() == 1);
    CHECK(diagnostics_of("[space]\nkind = path\n[maps]\n9lives = identity\n").size() == 1);
    CHECK(diagnostics_of("[space]\nkind = path\n[queries]\nclassify\n").size() == 1);
    CHECK(diagnostics_of("[space]\nkind = path\n[budgets]\nradius = 0\n").size() == 1);
}

TEST_CASE("table spaces and overrides resolve against the per-length ordering") {
    const auto sc = parse_scenario(R"([space]
kind = table
levels = 0:1, 2:3
stride = 2
[maps]
m = ray-advance 1 ; 2:2 -> 0:0
[queries]
single-norms m
)");
    CHECK(sc.space->describe() == "table(0:1,2:3;stride=2)");
    CHECK(sc.map("m")({2, 2}) == Point{0, 0});
    // |v| + 1 = 3 is the ray index; the third occupied length is 6
    CHECK(sc.map("m")({2, 1}) == Point{6, 0});
}

TEST_CASE("command-line budgets win") {
    BudgetOverrides o;
    o.radius = 5;
    o.family = 3;
    const auto sc = parse_scenario("[space]\nkind = path\n[budgets]\nradius = 9\nfamily = 9\n", o);
    CHECK(sc.budgets.radius == 5);
    CHECK(sc.budgets.family == 3);
    CHECK(sc.budgets.points == kDefaultPointBudget);
}

TEST_CASE("oracle-validated difference norms") {
    const auto sc = parse_scenario(R"([space]
kind = path
[maps]
id = identity
shift = ray-advance 1
[queries]
difference-norms id shift
oracle-validate id shift
)");
    const auto report = run(sc, {true});
    for (const auto& rec : report["records"]) {
        CHECK(rec["result"]["operator_norm"] == 2);
        CHECK(rec["result"]["essential_norm"] == 2);
        CHECK(rec["oracle"]["status"] == "agree");
        CHECK(rec["oracle"]["essential_probe"]["certified"] == 2);
    }
}

TEST_CASE("ball descriptor") {
    const auto sc = parse_scenario("[space]\nkind = path\n[maps]\nid = identity\n[queries]\nball id 3/2\n");
    const auto report = run(sc);
    CHECK(report["records"][0]["result"]["descriptor"]["kind"] == "dot-class-plus-compacts");
}

TEST_CASE("query failures stay local") {
    const auto sc = parse_scenario(R"([space]
kind = path
[budgets]
points = 20
[maps]
id = identity
c = constant 0:0
[queries]
path id c
witness id id
classify id c
oracle-validate id c
)");
    const auto report = run(sc, {true});
    const auto& recs = report["records"];
    CHECK(recs[0].contains("error"));
    CHECK(recs[1].contains("error"));
    CHECK_FALSE(recs[2].contains("error"));
    // the probes run out of budget and say so instead of failing
    CHECK(recs[3]["oracle"]["status"] == "inconclusive");
    CHECK(report["summary"]["errors"] == 2);
}

TEST_CASE("reports are deterministic") {
    const auto sc = parse_scenario(kMinimal);
    CHECK(run(sc, {true}).dump() == run(sc, {true}).dump());
}

TEST_CASE("records echo the maps they use") {
    const auto sc = parse_scenario(kMinimal);
    const auto rec = run(sc)["records"][0];
    CHECK(rec["maps"]["id"] == "identity");
    CHECK(rec["maps"]["id_pert"] == "identity ; 0:0 -> 5:0");
}
