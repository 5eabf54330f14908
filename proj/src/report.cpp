#include "levelpers/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "levelpers/error.hpp"
#include "levelpers/sublevel.hpp"

namespace levelpers::report {

using nlohmann::json;

std::string format_decimal(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error("format_decimal: conversion failed");
  return std::string(buf, end);
}

double parse_decimal(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(v)) {
    throw InputError("not a finite decimal: \"" + std::string(text) + "\"");
  }
  return v;
}

// ---------------------------------------------------------------------------
// Input

namespace {

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw InputError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(path + ": missing field \"" + key + "\"");
  return *it;
}

const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected an array");
  return j;
}

double read_value(const json& j, const std::string& path) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw InputError(path + ": value is not finite");
    return v;
  }
  if (j.is_string()) {
    try {
      return parse_decimal(j.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(path + ": " + e.what());
    }
  }
  throw InputError(path + ": expected a number or decimal string");
}

VertexId read_id(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path + ": expected an integer vertex id");
  return j.get<VertexId>();
}

std::vector<Simplex> read_simplices(const json& j, const std::string& path, const std::set<VertexId>* known) {
  std::vector<Simplex> out;
  const auto& arr = array_at(j, path);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string sp = path + "[" + std::to_string(k) + "]";
    const auto& sj = array_at(arr[k], sp);
    if (sj.empty()) throw InputError(sp + ": simplex has no vertices");
    Simplex s;
    for (std::size_t a = 0; a < sj.size(); ++a) {
      const std::string vp = sp + "[" + std::to_string(a) + "]";
      const VertexId v = read_id(sj[a], vp);
      if (known && !known->count(v)) throw InputError(vp + ": unknown vertex id " + std::to_string(v));
      s.push_back(v);
    }
    out.push_back(std::move(s));
  }
  return out;
}

SimplicialComplex build(const std::vector<Simplex>& generators, const std::string& path) {
  try {
    return SimplicialComplex::from_maximal(generators);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace

ParsedInput parse_input(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("document: expected a JSON object");

  if (doc.contains("filtration")) {
    const auto& fj = doc["filtration"];
    const auto& times = array_at(field(fj, "times", "filtration"), "filtration.times");
    const auto& stages = array_at(field(fj, "stages", "filtration"), "filtration.stages");
    Filtration filt;
    for (std::size_t k = 0; k < times.size(); ++k) {
      filt.times.push_back(read_value(times[k], "filtration.times[" + std::to_string(k) + "]"));
    }
    for (std::size_t k = 0; k < stages.size(); ++k) {
      const std::string sp = "filtration.stages[" + std::to_string(k) + "]";
      filt.stages.push_back(build(read_simplices(stages[k], sp, nullptr), sp));
    }
    validate(filt);
    ParsedInput out{telescope(filt), filt};
    return out;
  }

  const auto& vertices = array_at(field(doc, "vertices", "document"), "vertices");
  std::map<VertexId, double> values;
  std::set<VertexId> known;
  std::vector<Simplex> generators;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const std::string vp = "vertices[" + std::to_string(k) + "]";
    const VertexId id = read_id(field(vertices[k], "id", vp), vp + ".id");
    if (!known.insert(id).second) throw InputError(vp + ".id: duplicate vertex id " + std::to_string(id));
    values[id] = read_value(field(vertices[k], "value", vp), vp + ".value");
    generators.push_back({id});
  }
  auto simplices = read_simplices(field(doc, "maximal_simplices", "document"), "maximal_simplices", &known);
  generators.insert(generators.end(), simplices.begin(), simplices.end());
  return ParsedInput{VertexValuedMap(build(generators, "maximal_simplices"), std::move(values)), std::nullopt};
}

// ---------------------------------------------------------------------------
// Analysis

ResultDocument analyze(const VertexValuedMap& f, const AnalyzeOptions& options) {
  ResultDocument doc;
  if (options.with_checks) doc.checks = run_checks(f, options.max_degree);
  if (f.complex().empty()) return doc;

  const int max_degree = options.max_degree < 0 ? f.complex().dimension() : options.max_degree;
  doc.max_degree = max_degree;
  const auto nums = compute_relevant_numbers(f, max_degree);
  const auto& grid = nums.grid();
  const auto& crit = grid.criticals();
  doc.criticals = crit;

  const auto level = barcode_from_i(nums);
  for (const auto& bar : level.bars()) {
    doc.level.push_back({bar.degree, crit[bar.birth], crit[bar.death], bar.kind, bar.multiplicity});
  }
  const auto sub = restrict_degrees(sublevel_barcode(f), max_degree + 1);
  for (const auto& bar : sub.bars()) {
    SublevelRecord rec{bar.degree, crit[bar.birth], std::nullopt, bar.multiplicity};
    if (bar.death) rec.death = crit[*bar.death];
    doc.sublevel.push_back(rec);
  }

  const std::size_t n = crit.size();
  auto c = [](std::size_t k) { return CriticalGrid::critical_point(k); };
  for (int r = 0; r <= max_degree; ++r) {
    DegreeNumbers dn;
    dn.degree = r;
    dn.l.resize(n);
    dn.i.assign(n * n, 0);
    dn.lplus.assign(n * n, 0);
    dn.lminus.assign(n * n, 0);
    dn.e.assign(n * n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      dn.l[a] = nums.l(r, c(a));
      for (std::size_t b = 0; b < n; ++b) {
        dn.i[a * n + b] = nums.i(r, c(a), c(b));
        dn.lplus[a * n + b] = nums.lplus(r, c(a), c(b));
        dn.lminus[a * n + b] = nums.lminus(r, c(a), c(b));
        for (std::size_t lo = 0; lo < n; ++lo) dn.e[(a * n + b) * n + lo] = nums.e(r, c(a), c(b), c(lo));
      }
    }
    doc.numbers.push_back(std::move(dn));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json matrix(const std::vector<Count>& flat, std::size_t n) {
  json out = json::array();
  for (std::size_t a = 0; a < n; ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < n; ++b) row.push_back(flat[a * n + b]);
    out.push_back(std::move(row));
  }
  return out;
}

json cube(const std::vector<Count>& flat, std::size_t n) {
  json out = json::array();
  for (std::size_t a = 0; a < n; ++a) {
    json plane = json::array();
    for (std::size_t b = 0; b < n; ++b) {
      json row = json::array();
      for (std::size_t c = 0; c < n; ++c) row.push_back(flat[(a * n + b) * n + c]);
      plane.push_back(std::move(row));
    }
    out.push_back(std::move(plane));
  }
  return out;
}

void flatten(const json& j, std::vector<Count>& out, const std::string& path) {
  if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], out, path);
  } else if (j.is_number_integer()) {
    out.push_back(j.get<Count>());
  } else {
    throw InputError(path + ": expected nested arrays of integers");
  }
}

std::string read_string(const json& obj, const char* key, const std::string& path) {
  const auto& v = field(obj, key, path);
  if (!v.is_string()) throw InputError(path + "." + key + ": expected a string");
  return v.get<std::string>();
}

Count read_count(const json& obj, const char* key, const std::string& path) {
  const auto& v = field(obj, key, path);
  if (!v.is_number_integer()) throw InputError(path + "." + key + ": expected an integer");
  return v.get<Count>();
}

BarKind kind_from_flags(const std::string& left, const std::string& right, const std::string& path) {
  auto closed = [&](const std::string& flag) {
    if (flag == "closed") return true;
    if (flag == "open") return false;
    throw InputError(path + ": end flag must be \"open\" or \"closed\", got \"" + flag + "\"");
  };
  const bool l = closed(left);
  const bool r = closed(right);
  if (l && r) return BarKind::closed_closed;
  if (l) return BarKind::closed_open;
  if (r) return BarKind::open_closed;
  return BarKind::open_open;
}

const char* flag(bool closed) { return closed ? "closed" : "open"; }

}  // namespace

json sublevel_json(const ResultDocument& doc) {
  json bars = json::array();
  for (const auto& b : doc.sublevel) {
    bars.push_back({{"degree", b.degree},
                    {"birth", format_decimal(b.birth)},
                    {"death", b.death ? format_decimal(*b.death) : "inf"},
                    {"multiplicity", b.multiplicity}});
  }
  return bars;
}

json level_json(const ResultDocument& doc) {
  json bars = json::array();
  for (const auto& b : doc.level) {
    bars.push_back({{"degree", b.degree},
                    {"left", flag(left_closed(b.kind))},
                    {"birth", format_decimal(b.birth)},
                    {"death", format_decimal(b.death)},
                    {"right", flag(right_closed(b.kind))},
                    {"multiplicity", b.multiplicity}});
  }
  return bars;
}

json numbers_json(const ResultDocument& doc) {
  const std::size_t n = doc.criticals.size();
  json out = json::array();
  for (const auto& dn : doc.numbers) {
    out.push_back({{"degree", dn.degree},
                   {"l", dn.l},
                   {"i", matrix(dn.i, n)},
                   {"lplus", matrix(dn.lplus, n)},
                   {"lminus", matrix(dn.lminus, n)},
                   {"e", cube(dn.e, n)}});
  }
  return out;
}

json checks_json(const std::vector<CheckResult>& checks) {
  json out = json::array();
  for (const auto& c : checks) out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

json to_json(const ResultDocument& doc) {
  json crit = json::array();
  for (double t : doc.criticals) crit.push_back(format_decimal(t));
  json out = {{"criticals", crit},
              {"max_degree", doc.max_degree},
              {"sublevel", sublevel_json(doc)},
              {"level", level_json(doc)},
              {"numbers", numbers_json(doc)}};
  if (doc.checks) out["checks"] = checks_json(*doc.checks);
  return out;
}

ResultDocument result_from_json(const json& j) {
  ResultDocument doc;
  const auto& crit = array_at(field(j, "criticals", "document"), "criticals");
  for (std::size_t k = 0; k < crit.size(); ++k) {
    if (!crit[k].is_string()) throw InputError("criticals[" + std::to_string(k) + "]: expected a decimal string");
    doc.criticals.push_back(parse_decimal(crit[k].get<std::string>()));
  }
  const std::size_t n = doc.criticals.size();
  doc.max_degree = static_cast<int>(read_count(j, "max_degree", "document"));

  const auto& sub = array_at(field(j, "sublevel", "document"), "sublevel");
  for (std::size_t k = 0; k < sub.size(); ++k) {
    const std::string p = "sublevel[" + std::to_string(k) + "]";
    SublevelRecord r;
    r.degree = static_cast<int>(read_count(sub[k], "degree", p));
    r.birth = parse_decimal(read_string(sub[k], "birth", p));
    const double death = parse_decimal(read_string(sub[k], "death", p));
    if (!std::isinf(death)) r.death = death;
    r.multiplicity = read_count(sub[k], "multiplicity", p);
    doc.sublevel.push_back(r);
  }

  const auto& lev = array_at(field(j, "level", "document"), "level");
  for (std::size_t k = 0; k < lev.size(); ++k) {
    const std::string p = "level[" + std::to_string(k) + "]";
    LevelRecord r;
    r.degree = static_cast<int>(read_count(lev[k], "degree", p));
    r.kind = kind_from_flags(read_string(lev[k], "left", p), read_string(lev[k], "right", p), p);
    r.birth = parse_decimal(read_string(lev[k], "birth", p));
    r.death = parse_decimal(read_string(lev[k], "death", p));
    r.multiplicity = read_count(lev[k], "multiplicity", p);
    doc.level.push_back(r);
  }

  const auto& nums = array_at(field(j, "numbers", "document"), "numbers");
  for (std::size_t k = 0; k < nums.size(); ++k) {
    const std::string p = "numbers[" + std::to_string(k) + "]";
    DegreeNumbers dn;
    dn.degree = static_cast<int>(read_count(nums[k], "degree", p));
    flatten(field(nums[k], "l", p), dn.l, p + ".l");
    flatten(field(nums[k], "i", p), dn.i, p + ".i");
    flatten(field(nums[k], "lplus", p), dn.lplus, p + ".lplus");
    flatten(field(nums[k], "lminus", p), dn.lminus, p + ".lminus");
    flatten(field(nums[k], "e", p), dn.e, p + ".e");
    if (dn.l.size() != n || dn.i.size() != n * n || dn.lplus.size() != n * n || dn.lminus.size() != n * n ||
        dn.e.size() != n * n * n) {
      throw InputError(p + ": table sizes do not match the number of critical values");
    }
    doc.numbers.push_back(std::move(dn));
  }

  if (j.contains("checks")) {
    std::vector<CheckResult> checks;
    const auto& cj = array_at(j["checks"], "checks");
    for (std::size_t k = 0; k < cj.size(); ++k) {
      const std::string p = "checks[" + std::to_string(k) + "]";
      const auto& passed = field(cj[k], "passed", p);
      if (!passed.is_boolean()) throw InputError(p + ".passed: expected a boolean");
      checks.push_back({read_string(cj[k], "name", p), passed.get<bool>(), read_string(cj[k], "detail", p)});
    }
    doc.checks = std::move(checks);
  }
  return doc;
}

// ---------------------------------------------------------------------------
// CSV

std::string bars_csv(const ResultDocument& doc, bool include_level, bool include_sublevel) {
  std::ostringstream out;
  out << "degree,left,birth,death,right,multiplicity,kind\n";
  if (include_level) {
    for (const auto& b : doc.level) {
      out << b.degree << ',' << flag(left_closed(b.kind)) << ',' << format_decimal(b.birth) << ','
          << format_decimal(b.death) << ',' << flag(right_closed(b.kind)) << ',' << b.multiplicity << ",level\n";
    }
  }
  if (include_sublevel) {
    for (const auto& b : doc.sublevel) {
      out << b.degree << ",closed," << format_decimal(b.birth) << ',' << (b.death ? format_decimal(*b.death) : "inf")
          << ",open," << b.multiplicity << ",sublevel\n";
    }
  }
  return out.str();
}

std::string numbers_csv(const ResultDocument& doc) {
  const std::size_t n = doc.criticals.size();
  std::ostringstream out;
  out << "table,degree,t,t1,t2,value\n";
  auto t = [&](std::size_t k) { return format_decimal(doc.criticals[k]); };
  for (const auto& dn : doc.numbers) {
    for (std::size_t a = 0; a < n; ++a) {
      if (dn.l[a]) out << "l," << dn.degree << ',' << t(a) << ",,," << dn.l[a] << '\n';
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (dn.i[a * n + b]) out << "i," << dn.degree << ',' << t(a) << ',' << t(b) << ",," << dn.i[a * n + b] << '\n';
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (dn.lplus[a * n + b]) {
          out << "lplus," << dn.degree << ',' << t(a) << ',' << t(b) << ",," << dn.lplus[a * n + b] << '\n';
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (dn.lminus[a * n + b]) {
          out << "lminus," << dn.degree << ',' << t(a) << ",," << t(b) << ',' << dn.lminus[a * n + b] << '\n';
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          const Count v = dn.e[(a * n + b) * n + c];
          if (v) out << "e," << dn.degree << ',' << t(a) << ',' << t(b) << ',' << t(c) << ',' << v << '\n';
        }
      }
    }
  }
  return out.str();
}

std::string checks_csv(const std::vector<CheckResult>& checks) {
  std::ostringstream out;
  out << "name,passed,detail\n";
  for (const auto& c : checks) {
    std::string detail = c.detail;
    for (auto& ch : detail) {
      if (ch == '"') ch = '\'';
    }
    out << c.name << ',' << (c.passed ? "true" : "false") << ",\"" << detail << "\"\n";
  }
  return out.str();
}

}  // namespace levelpers::report
