// json_io.hpp — JSON (de)serialization for matrices, subspace records and
// graph reports.
//
// Wire formats:
//   matrix    {p, s, rows, cols, entries: [row-major ints in [0, p^s)]}
//   subspace  {p, s, n, m, rows: [[...], ...]}   (canonical basis rows)
//   report    {params, vertices, valency_formula, valency_measured, ...,
//              checks: [{name, pass}]}
// Deserialization validates ranges strictly; out-of-range entries are an
// error, not silently reduced.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "zgrass/errors.hpp"
#include "zgrass/matrix.hpp"
#include "zgrass/ring.hpp"
#include "zgrass/subspace.hpp"

namespace zgrass {

using nlohmann::json;

inline json matrix_to_json(const Matrix& a) {
  const RingContext& c = a.context();
  return json{{"p", c.p},
              {"s", c.s},
              {"rows", a.rows()},
              {"cols", a.cols()},
              {"entries", a.entries()}};
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("s") || !j.contains("rows") ||
      !j.contains("cols") || !j.contains("entries"))
    throw Error("matrix json needs fields p, s, rows, cols, entries");
  const RingContext ctx(j.at("p").get<u64>(), j.at("s").get<u64>());
  const u64 rows = j.at("rows").get<u64>();
  const u64 cols = j.at("cols").get<u64>();
  const auto entries = j.at("entries").get<std::vector<u64>>();
  if (entries.size() != rows * cols) throw Error("matrix json entry count mismatch");
  for (u64 v : entries)
    if (v >= ctx.q) throw Error("matrix json entry out of range [0, p^s)");
  return Matrix::from_entries(rows, cols, entries, ctx);
}

inline json subspace_record(const Subspace& x) {
  const Matrix& b = x.basis();
  const RingContext& c = b.context();
  json rows = json::array();
  for (u64 i = 0; i < b.rows(); ++i) rows.push_back(b.row(i));
  return json{{"p", c.p}, {"s", c.s}, {"n", x.ambient()}, {"m", x.dim()}, {"rows", rows}};
}

inline Subspace subspace_from_record(const json& j) {
  const RingContext ctx(j.at("p").get<u64>(), j.at("s").get<u64>());
  const u64 n = j.at("n").get<u64>();
  const u64 m = j.at("m").get<u64>();
  const auto rows = j.at("rows").get<std::vector<std::vector<u64>>>();
  if (rows.size() != m) throw Error("subspace record row count != m");
  Matrix b(m, n, ctx);
  for (u64 i = 0; i < m; ++i) {
    if (rows[i].size() != n) throw Error("subspace record row length != n");
    for (u64 jx = 0; jx < n; ++jx) {
      if (rows[i][jx] >= ctx.q) throw Error("subspace record entry out of range");
      b.set(i, jx, rows[i][jx]);
    }
  }
  return canonicalize_subspace(b);
}

// One named pass/fail (or skipped) verdict inside a report.
struct CheckResult {
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string detail;  // counterexample dump or note; empty when clean

  bool operator==(const CheckResult& o) const {
    return name == o.name && pass == o.pass && skipped == o.skipped && detail == o.detail;
  }
};

inline void to_json(json& j, const CheckResult& c) {
  j = json{{"name", c.name}, {"pass", c.pass}};
  if (c.skipped) j["skipped"] = true;
  if (!c.detail.empty()) j["detail"] = c.detail;
}

inline void from_json(const json& j, CheckResult& c) {
  j.at("name").get_to(c.name);
  j.at("pass").get_to(c.pass);
  c.skipped = j.value("skipped", false);
  c.detail = j.value("detail", std::string{});
}

// Graph command output. Optional fields are emitted only when present so the
// report stays honest about what was actually measured.
struct GraphReport {
  u64 p = 0, s = 0, n = 0, m = 0;
  std::string family;  // "grassmann" or "bilinear"
  u64 vertices = 0;
  std::optional<u64> valency_formula;
  std::optional<u64> valency_measured;
  std::optional<u64> mc_valency_formula;
  std::optional<u64> mc_valency_measured;
  std::optional<u64> omega_formula;
  std::optional<u64> omega_measured;
  std::optional<u64> diameter_measured;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass && !c.skipped) return false;
    return true;
  }

  bool operator==(const GraphReport& o) const {
    return p == o.p && s == o.s && n == o.n && m == o.m && family == o.family &&
           vertices == o.vertices && valency_formula == o.valency_formula &&
           valency_measured == o.valency_measured && mc_valency_formula == o.mc_valency_formula &&
           mc_valency_measured == o.mc_valency_measured && omega_formula == o.omega_formula &&
           omega_measured == o.omega_measured && diameter_measured == o.diameter_measured &&
           checks == o.checks;
  }
};

inline void to_json(json& j, const GraphReport& r) {
  j = json{{"params", json{{"p", r.p}, {"s", r.s}, {"n", r.n}, {"m", r.m}, {"family", r.family}}},
           {"vertices", r.vertices},
           {"checks", r.checks}};
  auto put = [&](const char* key, const std::optional<u64>& v) {
    if (v) j[key] = *v;
  };
  put("valency_formula", r.valency_formula);
  put("valency_measured", r.valency_measured);
  put("mc_valency_formula", r.mc_valency_formula);
  put("mc_valency_measured", r.mc_valency_measured);
  put("omega_formula", r.omega_formula);
  put("omega_measured", r.omega_measured);
  put("diameter_measured", r.diameter_measured);
}

inline void from_json(const json& j, GraphReport& r) {
  const json& params = j.at("params");
  params.at("p").get_to(r.p);
  params.at("s").get_to(r.s);
  params.at("n").get_to(r.n);
  params.at("m").get_to(r.m);
  params.at("family").get_to(r.family);
  j.at("vertices").get_to(r.vertices);
  auto grab = [&](const char* key) -> std::optional<u64> {
    if (j.contains(key)) return j.at(key).get<u64>();
    return std::nullopt;
  };
  r.valency_formula = grab("valency_formula");
  r.valency_measured = grab("valency_measured");
  r.mc_valency_formula = grab("mc_valency_formula");
  r.mc_valency_measured = grab("mc_valency_measured");
  r.omega_formula = grab("omega_formula");
  r.omega_measured = grab("omega_measured");
  r.diameter_measured = grab("diameter_measured");
  r.checks = j.at("checks").get<std::vector<CheckResult>>();
}

}  // namespace zgrass
