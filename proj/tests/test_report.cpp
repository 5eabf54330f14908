#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "levelpers/error.hpp"
#include "levelpers/report.hpp"

using namespace levelpers;
using namespace levelpers::report;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(LEVELPERS_TEST_DATA) + "/" + name, std::ios::binary);
  REQUIRE(in);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::string error_of(std::string_view text) {
  try {
    parse_input(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse an edge") {
  const auto in = parse_input(R"({"vertices":[{"id":0,"value":0},{"id":1,"value":1}],"maximal_simplices":[[0,1]]})");
  CHECK(in.map.complex().size() == 3);
  CHECK(in.map.value(1) == 1.0);
  CHECK_FALSE(in.filtration);
}

TEST_CASE("parse the square circle") {
  const auto in = parse_input(read_data("circle.json"));
  CHECK(in.map.complex().size() == 8);
  CHECK(critical_values(in.map).criticals() == std::vector<double>{0, 1, 2});
}

TEST_CASE("values may be decimal strings") {
  const auto in = parse_input(R"({"vertices":[{"id":3,"value":"0.1"}],"maximal_simplices":[]})");
  CHECK(in.map.value(3) == 0.1);
}

TEST_CASE("parse a filtration") {
  const auto in = parse_input(read_data("two_points.json"));
  REQUIRE(in.filtration);
  CHECK(in.filtration->stages.size() == 2);
  CHECK(critical_values(in.map).criticals() == std::vector<double>{0, 1});
}

TEST_CASE("input diagnostics") {
  CHECK(error_of(read_data("malformed.json")).find("line 3") != std::string::npos);
  CHECK(error_of(read_data("not_nested.json")).find("[0]") != std::string::npos);
  CHECK(error_of(R"({"vertices":[{"id":0,"value":0}],"maximal_simplices":[[0,5]]})")
            .find("maximal_simplices[0][1]: unknown vertex id 5") != std::string::npos);
  CHECK(error_of(R"({"vertices":[{"id":0,"value":0},{"id":0,"value":1}],"maximal_simplices":[]})")
            .find("vertices[1].id: duplicate") != std::string::npos);
  CHECK(error_of(R"({"vertices":[{"id":0}],"maximal_simplices":[]})").find("vertices[0]: missing field \"value\"") !=
        std::string::npos);
  CHECK(error_of(R"({"vertices":[{"id":0,"value":"abc"}],"maximal_simplices":[]})").find("vertices[0].value") !=
        std::string::npos);
  CHECK(error_of(R"([1, 2])").find("object") != std::string::npos);
  CHECK(error_of(R"({"vertices":[{"id":0.5,"value":0}],"maximal_simplices":[]})").find("integer") !=
        std::string::npos);
}

TEST_CASE("decimal strings round trip") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const double v = dist(rng);
    CHECK(parse_decimal(format_decimal(v)) == v);
  }
  CHECK(format_decimal(0.1) == "0.1");
  CHECK(std::isinf(parse_decimal("inf")));
  CHECK_THROWS_AS(parse_decimal("1x"), InputError);
}

TEST_CASE("analyze the circle") {
  const auto doc = analyze(fixtures::circle(), {.max_degree = -1, .with_checks = true});
  CHECK(doc.criticals == std::vector<double>{0, 1, 2});
  const std::vector<LevelRecord> level{{0, 0, 2, BarKind::closed_closed, 1}, {0, 0, 2, BarKind::open_open, 1}};
  CHECK(doc.level == level);
  REQUIRE(doc.sublevel.size() == 2);
  CHECK(doc.sublevel[0] == SublevelRecord{0, 0, std::nullopt, 1});
  CHECK(doc.sublevel[1] == SublevelRecord{1, 2, std::nullopt, 1});
  REQUIRE(doc.checks);
  CHECK(all_passed(*doc.checks));
  CHECK(doc.checks->size() == 10);
}

TEST_CASE("analyze the octahedron") {
  const auto doc = analyze(fixtures::octahedron(), {.max_degree = -1, .with_checks = true});
  CHECK(std::count(doc.level.begin(), doc.level.end(), LevelRecord{1, -1, 1, BarKind::open_open, 1}) == 1);
  CHECK(all_passed(*doc.checks));
}

TEST_CASE("analyze an empty complex") {
  const auto in = parse_input(R"({"vertices":[],"maximal_simplices":[]})");
  const auto doc = analyze(in.map, {.max_degree = -1, .with_checks = true});
  CHECK(doc.criticals.empty());
  CHECK(doc.level.empty());
  CHECK(doc.sublevel.empty());
  CHECK(doc.numbers.empty());
  CHECK(all_passed(*doc.checks));
  CHECK(result_from_json(to_json(doc)) == doc);
}

TEST_CASE("numbers tables on the critical grid") {
  const auto doc = analyze(fixtures::edge());
  REQUIRE(doc.numbers.size() == 2);
  const auto& d0 = doc.numbers[0];
  CHECK(d0.i == std::vector<Count>{1, 1, 0, 1});
  CHECK(d0.l == std::vector<Count>{1, 1});
  CHECK(std::all_of(d0.e.begin(), d0.e.end(), [](Count v) { return v == 0; }));
}

TEST_CASE("result documents round trip through JSON") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto doc = analyze(random_map(rng), {.max_degree = -1, .with_checks = trial % 2 == 0});
    const auto text = to_json(doc).dump();
    CHECK(result_from_json(nlohmann::json::parse(text)) == doc);
  }
}

TEST_CASE("CSV and JSON encode the same bars") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto doc = analyze(random_map(rng));
    std::multiset<std::string> from_json;
    for (const auto& b : level_json(doc)) {
      from_json.insert(std::to_string(b["degree"].get<int>()) + "," + b["left"].get<std::string>() + "," +
                       b["birth"].get<std::string>() + "," + b["death"].get<std::string>() + "," +
                       b["right"].get<std::string>() + "," + std::to_string(b["multiplicity"].get<Count>()) +
                       ",level");
    }
    for (const auto& b : sublevel_json(doc)) {
      from_json.insert(std::to_string(b["degree"].get<int>()) + ",closed," + b["birth"].get<std::string>() + "," +
                       b["death"].get<std::string>() + ",open," + std::to_string(b["multiplicity"].get<Count>()) +
                       ",sublevel");
    }
    std::multiset<std::string> from_csv;
    std::istringstream rows(bars_csv(doc));
    std::string row;
    std::getline(rows, row);
    CHECK(row == "degree,left,birth,death,right,multiplicity,kind");
    while (std::getline(rows, row)) from_csv.insert(row);
    CHECK(from_csv == from_json);
  }
}

TEST_CASE("svg of the circle") {
  const auto svg = render_svg(analyze(fixtures::circle()));
  CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
  CHECK(occurrences(svg, "stroke-width=\"2\"") == 4);
  CHECK(occurrences(svg, "stroke-dasharray") == 3);
  CHECK(occurrences(svg, "<polygon") == 2);
  for (const char* label : {">0<", ">1<", ">2<"}) CHECK(occurrences(svg, label) == 1);
  CHECK(svg == render_svg(analyze(fixtures::circle())));
}

TEST_CASE("svg of the lambda map marks the open end") {
  const auto doc = analyze(fixtures::lambda());
  const auto svg = render_svg(doc);
  // Level bars: [0,2] then [1,2); the open dot closes the second track.
  const auto second = svg.find("stroke-width=\"2\"", svg.find("stroke-width=\"2\"") + 1);
  REQUIRE(second != std::string::npos);
  const auto track = svg.substr(second, svg.find("stroke-width=\"2\"", second + 1) - second);
  CHECK(occurrences(track, "fill=\"black\"/>") == 1);
  CHECK(occurrences(track, "fill=\"white\" stroke=\"black\"") == 1);
}

TEST_CASE("svg of an empty result") {
  const auto svg = render_svg(ResultDocument{});
  CHECK(occurrences(svg, "<line") == 1);
  CHECK(occurrences(svg, "<circle") == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK_THROWS_AS(write_svg(ResultDocument{}, "/nonexistent-dir/out.svg"), Error);
}
