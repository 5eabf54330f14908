#pragma once

// Input documents, result documents and their JSON / CSV / SVG encodings.
//
// Input (JSON), one of:
//   {"vertices": [{"id": 0, "value": 0.5}, ...],
//    "maximal_simplices": [[0, 1], [1, 2, 3], ...]}
//   {"filtration": {"times": [0, 1], "stages": [[[0], [1]], [[0, 1]]]}}
// Values may be JSON numbers or decimal strings. Filtration stages list
// maximal simplices; the telescope of the filtration is analyzed.
//
// Every real number in a result document is a decimal string (shortest
// round-trip form); infinite deaths are "inf".

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "levelpers/checks.hpp"
#include "levelpers/complex.hpp"
#include "levelpers/level.hpp"

namespace levelpers::report {

struct ParsedInput {
  VertexValuedMap map;
  std::optional<Filtration> filtration;
};

/// Throws InputError with a line/column or field path on any problem.
ParsedInput parse_input(std::string_view text);

std::string format_decimal(double v);
/// Accepts what format_decimal produces plus "inf"; throws InputError.
double parse_decimal(std::string_view text);

struct SublevelRecord {
  int degree = 0;
  double birth = 0.0;
  std::optional<double> death;  // nullopt = infinity
  Count multiplicity = 0;

  auto operator<=>(const SublevelRecord&) const = default;
};

struct LevelRecord {
  int degree = 0;
  double birth = 0.0;
  double death = 0.0;
  BarKind kind = BarKind::closed_closed;
  Count multiplicity = 0;

  auto operator<=>(const LevelRecord&) const = default;
};

/// Relevant numbers restricted to critical values t_0..t_N, dense row-major.
/// Entries violating an ordering constraint are 0.
struct DegreeNumbers {
  int degree = 0;
  std::vector<Count> l;       // [k]
  std::vector<Count> i;       // [a][b], a <= b
  std::vector<Count> lplus;   // [a][b], a <= b
  std::vector<Count> lminus;  // [a][lower], lower <= a
  std::vector<Count> e;       // [a][upper][lower]

  bool operator==(const DegreeNumbers&) const = default;
};

struct ResultDocument {
  std::vector<double> criticals;
  int max_degree = -1;
  std::vector<SublevelRecord> sublevel;
  std::vector<LevelRecord> level;
  std::vector<DegreeNumbers> numbers;
  std::optional<std::vector<CheckResult>> checks;

  bool operator==(const ResultDocument&) const = default;
};

struct AnalyzeOptions {
  int max_degree = -1;  // negative: dim X
  bool with_checks = false;
};

/// Runs the sub-level pipeline, the direct relevant numbers and the level
/// barcode from them. Propagates UnrealizableNumbers.
ResultDocument analyze(const VertexValuedMap& f, const AnalyzeOptions& options = {});

nlohmann::json to_json(const ResultDocument& doc);
/// Inverse of to_json; throws InputError on schema violations.
ResultDocument result_from_json(const nlohmann::json& j);

nlohmann::json sublevel_json(const ResultDocument& doc);
nlohmann::json level_json(const ResultDocument& doc);
nlohmann::json numbers_json(const ResultDocument& doc);
nlohmann::json checks_json(const std::vector<CheckResult>& checks);

/// Bar rows: degree,left,birth,death,right,multiplicity,kind.
std::string bars_csv(const ResultDocument& doc, bool include_level = true, bool include_sublevel = true);
/// Number rows: table,degree,t,t1,t2,value (only nonzero entries).
std::string numbers_csv(const ResultDocument& doc);
std::string checks_csv(const std::vector<CheckResult>& checks);

std::string render_svg(const ResultDocument& doc);
/// Throws Error when the file cannot be written.
void write_svg(const ResultDocument& doc, const std::filesystem::path& path);

}  // namespace levelpers::report
