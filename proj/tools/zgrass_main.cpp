// zgrass — batch front door for the library: enumerate subspaces, build and
// report on the graphs, run the verification suites, and check candidate
// automorphisms. Outputs are deterministic given (flags, seed).
//
// Exit codes: 0 success / all checks pass, 1 usage or mathematical
// precondition error (including formula-vs-measured mismatches), 2 work
// budget exhausted.
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zgrass/grassmann.hpp"
#include "zgrass/json_io.hpp"
#include "zgrass/oracles.hpp"

namespace {

using namespace zgrass;

struct Options {
  u64 p = 2, s = 2, n = 4, m = 2;
  std::optional<u64> budget;
  u64 seed = 0;
  std::string report;      // JSON report path (graph/verify/aut)
  std::string export_fmt;  // "dot" or "csv"
  std::string out;         // records / export path
  std::vector<std::string> suites;
  std::string family = "grassmann";
  std::string ufile;  // aut: matrix JSON file
};

std::string format_matrix(const Matrix& a) {
  std::ostringstream os;
  os << "[";
  for (u64 i = 0; i < a.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (u64 j = 0; j < a.cols(); ++j) os << (j ? "," : "") << a(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

Matrix random_matrix(std::mt19937_64& rng, u64 rows, u64 cols, const RingContext& ctx) {
  Matrix a(rows, cols, ctx);
  std::uniform_int_distribution<u64> pick(0, ctx.q - 1);
  for (u64 i = 0; i < rows; ++i)
    for (u64 j = 0; j < cols; ++j) a.set(i, j, pick(rng));
  return a;
}

Matrix random_invertible(std::mt19937_64& rng, u64 n, const RingContext& ctx) {
  // Rejection sampling: the invertible fraction is prod (1 - p^{-k}) > 1/4.
  for (int tries = 0; tries < 512; ++tries) {
    Matrix a = random_matrix(rng, n, n, ctx);
    if (is_invertible(a)) return a;
  }
  throw Error("random_invertible: rejection sampling failed");
}

u64 fnv1a_digest(const std::vector<u64>& perm) {
  u64 h = 14695981039346656037ull;
  for (u64 v : perm)
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  return h;
}

std::mt19937_64 seeded_rng(u64 seed, const std::string& salt) {
  u64 h = 14695981039346656037ull;
  for (char c : salt) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return std::mt19937_64(seed ^ h);
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open output file: " + path);
  return f;
}

// ---------------------------------------------------------------------------
// enum: JSONL records of all m-subspaces plus a count-vs-formula summary.

int cmd_enum(const Options& opt) {
  const RingContext ctx(opt.p, opt.s);
  if (opt.m < 1 || opt.m >= opt.n) throw ParameterRange("enum needs 1 <= m < n");
  const u64 formula = count_subspaces(ctx, opt.n, opt.m);
  const std::vector<Subspace> all = enumerate_subspaces(ctx, opt.n, opt.m);

  std::ostream* sink = &std::cout;
  std::ofstream file;
  if (!opt.out.empty()) {
    file = open_or_throw(opt.out);
    sink = &file;
  }
  for (const Subspace& x : all) (*sink) << subspace_record(x).dump() << "\n";

  const bool ok = all.size() == formula;
  std::cout << "count=" << all.size() << " formula=" << formula << (ok ? " ok" : " MISMATCH")
            << "\n";
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// graph: JSON report with formula-vs-measured checks, optional DOT/CSV export.

// Exact searches only run on instances small enough to finish at desk scale;
// above the cap the optional report fields stay absent rather than approximate.
constexpr u64 kExactSearchCap = 2000;

void export_graph(const Options& opt, const BitGraph& g,
                  const std::function<std::string(u64)>& label) {
  std::string path = opt.out;
  if (path.empty()) {
    std::ostringstream os;
    os << "zgrass_" << opt.family << "_p" << opt.p << "s" << opt.s << "n" << opt.n << "m" << opt.m
       << "." << opt.export_fmt;
    path = os.str();
  }
  std::ofstream f = open_or_throw(path);
  if (opt.export_fmt == "dot") {
    f << "graph zgrass {\n";
    for (u64 v = 0; v < g.size(); ++v) f << "  " << v << " [label=\"" << label(v) << "\"];\n";
    for (u64 a = 0; a < g.size(); ++a)
      for (u64 b = a + 1; b < g.size(); ++b)
        if (g.adjacent(a, b)) f << "  " << a << " -- " << b << ";\n";
    f << "}\n";
  } else {  // csv
    f << "source,target\n";
    for (u64 a = 0; a < g.size(); ++a)
      for (u64 b = a + 1; b < g.size(); ++b)
        if (g.adjacent(a, b)) f << a << "," << b << "\n";
  }
  std::cout << "exported " << opt.export_fmt << " to " << path << "\n";
}

GraphReport grassmann_report(const Options& opt, const GrassmannGraph& g) {
  const RingContext ctx(opt.p, opt.s);
  GraphReport r;
  r.p = opt.p;
  r.s = opt.s;
  r.n = opt.n;
  r.m = opt.m;
  r.family = "grassmann";

  r.vertices = g.size();
  const BitGraph& adj = g.adjacency();

  r.valency_formula = valency_formula(ctx, opt.n, opt.m);
  r.mc_valency_formula = mc_valency_formula(ctx, opt.n, opt.m);
  r.valency_measured = adj.degree(0);
  bool regular = true;
  for (u64 v = 0; v < g.size(); ++v)
    if (adj.degree(v) != *r.valency_measured) regular = false;
  r.checks.push_back({"regular", regular, false, ""});
  r.checks.push_back(
      {"valency_matches_formula", regular && *r.valency_measured == *r.valency_formula, false, ""});

  r.mc_valency_measured = g.mc_degree(0);
  r.checks.push_back(
      {"mc_valency_matches_formula", *r.mc_valency_measured == *r.mc_valency_formula, false, ""});

  r.diameter_measured = static_cast<u64>(adj.diameter());

  // Clique number: duality G(n,m) ~ G(n,n-m) lets the n >= 2m formula cover
  // every instance through the smaller side.
  const u64 mside = std::min(opt.m, opt.n - opt.m);
  r.omega_formula = clique_number_formula(ctx, opt.n, mside);
  if (g.size() <= kExactSearchCap) {
    try {
      const std::vector<u64> best = maximum_clique(adj);
      r.omega_measured = best.size();
      r.checks.push_back({"omega_matches_formula", *r.omega_measured == *r.omega_formula, false, ""});
    } catch (const BudgetExceeded&) {
      r.checks.push_back({"omega_matches_formula", false, true, "clique search hit the budget"});
    }
  }

  // Distance theorem spot check on seeded pairs.
  {
    std::mt19937_64 rng = seeded_rng(opt.seed, "graph.distance");
    std::uniform_int_distribution<u64> pick(0, g.size() - 1);
    bool all_match = true;
    std::string bad;
    for (int t = 0; t < 200 && all_match; ++t) {
      const u64 a = pick(rng), b = pick(rng);
      const u64 ad = arithmetic_distance(g.vertex(a), g.vertex(b));
      if (static_cast<u64>(g.graph_distance(a, b)) != ad) {
        all_match = false;
        bad = "ids " + std::to_string(a) + "," + std::to_string(b);
      }
    }
    r.checks.push_back({"distance_equals_arithmetic_sampled", all_match, false, bad});
  }
  return r;
}

GraphReport bilinear_report(const Options& opt, const BilinearGraph& bg, const BitGraph& adj) {
  const RingContext ctx(opt.p, opt.s);
  GraphReport r;
  r.p = opt.p;
  r.s = opt.s;
  r.n = opt.n;
  r.m = opt.m;
  r.family = "bilinear";

  r.vertices = bg.vertex_count();

  r.valency_measured = adj.degree(0);
  bool regular = true;
  for (u64 v = 0; v < adj.size(); ++v)
    if (adj.degree(v) != *r.valency_measured) regular = false;
  r.checks.push_back({"regular", regular, false, ""});

  r.diameter_measured = static_cast<u64>(adj.diameter());
  r.omega_formula = bf_clique_number(ctx, opt.m, opt.n);
  if (adj.size() <= kExactSearchCap) {
    try {
      const std::vector<u64> best = maximum_clique(adj);
      r.omega_measured = best.size();
      r.checks.push_back({"omega_matches_formula", *r.omega_measured == *r.omega_formula, false, ""});
    } catch (const BudgetExceeded&) {
      r.checks.push_back({"omega_matches_formula", false, true, "clique search hit the budget"});
    }
  }
  return r;
}

int cmd_graph(const Options& opt) {
  if (opt.family != "grassmann" && opt.family != "bilinear")
    throw ParameterRange("--family must be grassmann or bilinear");
  const RingContext ctx(opt.p, opt.s);

  GraphReport r;
  if (opt.family == "grassmann") {
    if (opt.m < 1 || opt.m >= opt.n) throw ParameterRange("graph needs 1 <= m < n");
    const GrassmannGraph g(ctx, opt.n, opt.m);
    r = grassmann_report(opt, g);
    if (!opt.export_fmt.empty())
      export_graph(opt, g.adjacency(), [&](u64 v) { return format_matrix(g.vertex(v).basis()); });
  } else {
    const BilinearGraph bg(ctx, opt.m, opt.n);
    const BitGraph adj = bg.build_adjacency();
    r = bilinear_report(opt, bg, adj);
    if (!opt.export_fmt.empty())
      export_graph(opt, adj, [&](u64 v) { return format_matrix(bg.matrix_of(v)); });
  }

  const json j = r;
  if (!opt.report.empty()) {
    open_or_throw(opt.report) << j.dump(2) << "\n";
    std::cout << "report written to " << opt.report << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  for (const auto& c : r.checks)
    std::cout << "check " << c.name << ": " << (c.skipped ? "skipped" : c.pass ? "pass" : "FAIL")
              << "\n";
  return r.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify: named property checks per suite, counterexamples dumped on failure.
// A check that exhausts the budget is reported as skipped, not failed.

class CheckRunner {
 public:
  CheckRunner(const std::string& suite, u64 budget_cap, u64 seed)
      : suite_(suite), cap_(budget_cap), seed_(seed) {}

  using Fn = std::function<std::optional<std::string>(std::mt19937_64&)>;

  void run(const std::string& name, const Fn& fn) {
    CheckResult c;
    c.name = suite_ + "." + name;
    Budget::instance().reset(cap_);  // fresh meter so one heavy check cannot starve the rest
    std::mt19937_64 rng = seeded_rng(seed_, c.name);
    try {
      std::optional<std::string> bad = fn(rng);
      c.pass = !bad.has_value();
      if (bad) c.detail = *bad;
    } catch (const BudgetExceeded&) {
      c.skipped = true;
      c.detail = "budget exhausted";
    } catch (const Error& e) {
      c.detail = e.what();
    }
    std::cout << "[" << c.name << "] " << (c.skipped ? "skipped" : c.pass ? "pass" : "FAIL");
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << "\n";
    results.push_back(std::move(c));
  }

  std::vector<CheckResult> results;

 private:
  std::string suite_;
  u64 cap_;
  u64 seed_;
};

void suite_ring(CheckRunner& cr, const RingContext& ctx) {
  cr.run("unit_partition", [&](std::mt19937_64&) -> std::optional<std::string> {
    u64 units = 0;
    for (u64 x = 0; x < ctx.q; ++x) {
      if (ctx.is_unit(x) != (x % ctx.p != 0))
        return "unit test disagrees with divisibility at x=" + std::to_string(x);
      if (ctx.is_unit(x)) ++units;
    }
    const u64 expect = (ctx.p - 1) * ctx.p_power(ctx.s - 1);
    if (units != expect)
      return "unit count " + std::to_string(units) + " != " + std::to_string(expect);
    return std::nullopt;
  });
  cr.run("unit_inverses", [&](std::mt19937_64&) -> std::optional<std::string> {
    for (u64 x = 0; x < ctx.q; ++x)
      if (ctx.is_unit(x) && ctx.mul(x, ctx.invert_unit(x)) != 1)
        return "inverse failed at x=" + std::to_string(x);
    return std::nullopt;
  });
  cr.run("valuation_decomposition", [&](std::mt19937_64&) -> std::optional<std::string> {
    if (ctx.valuation(0) != ctx.s) return "val(0) != s";
    for (u64 x = 1; x < ctx.q; ++x) {
      const auto [t, u] = ctx.valuation_decompose(x);
      if (!ctx.is_unit(u) || ctx.mul(ctx.p_power(t), u) != x)
        return "decomposition failed at x=" + std::to_string(x);
    }
    return std::nullopt;
  });
  cr.run("arithmetic_laws_sampled", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    std::uniform_int_distribution<u64> pick(0, ctx.q - 1);
    for (int t = 0; t < 300; ++t) {
      const u64 a = pick(rng), b = pick(rng), c = pick(rng);
      if (ctx.mul(a, b) != ctx.mul(b, a)) return "mul not commutative";
      if (ctx.mul(a, ctx.mul(b, c)) != ctx.mul(ctx.mul(a, b), c)) return "mul not associative";
      if (ctx.mul(a, ctx.add(b, c)) != ctx.add(ctx.mul(a, b), ctx.mul(a, c)))
        return "distributivity failed";
    }
    return std::nullopt;
  });
}

void suite_matrix(CheckRunner& cr, const RingContext& ctx) {
  cr.run("normal_form_reconstructs", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    const std::pair<u64, u64> shapes[] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};
    for (const auto& [rws, cls] : shapes)
      for (int t = 0; t < 50; ++t) {
        const Matrix a = random_matrix(rng, rws, cls, ctx);
        const NormalForm nf = canonical_diagonalize(a);
        if (nf.P * nf.diagonal(ctx) * nf.Q != a) return "P*D*Q != A for A=" + format_matrix(a);
        if (nf.P * nf.P_inv != Matrix::identity(rws, ctx)) return "P_inv wrong";
        if (nf.Q * nf.Q_inv != Matrix::identity(cls, ctx)) return "Q_inv wrong";
        if (nf.rho() != inner_rank(a)) return "rho mismatch for A=" + format_matrix(a);
      }
    return std::nullopt;
  });
  cr.run("inner_rank_matches_oracle", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    for (int t = 0; t < 25; ++t) {
      const Matrix a = random_matrix(rng, 2, 2, ctx);
      if (inner_rank(a) != oracle_inner_rank(a))
        return "inner rank disagrees with factorization oracle for A=" + format_matrix(a);
      const Matrix b = random_matrix(rng, 2, 3, ctx);
      if (inner_rank(b) != oracle_inner_rank(b))
        return "inner rank disagrees with factorization oracle for A=" + format_matrix(b);
    }
    return std::nullopt;
  });
  cr.run("rank_inequalities_sampled", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    for (int t = 0; t < 200; ++t) {
      const Matrix a = random_matrix(rng, 3, 3, ctx);
      const Matrix b = random_matrix(rng, 3, 3, ctx);
      if (mccoy_rank(a) > inner_rank(a)) return "rk > rho for A=" + format_matrix(a);
      Matrix sum(3, 3, ctx);
      for (u64 i = 0; i < 3; ++i)
        for (u64 j = 0; j < 3; ++j) sum.set(i, j, ctx.add(a(i, j), b(i, j)));
      if (inner_rank(sum) > inner_rank(a) + inner_rank(b)) return "rho subadditivity failed";
      const Matrix prod = a * b;
      if (inner_rank(prod) > std::min(inner_rank(a), inner_rank(b)))
        return "rho(AB) > min for A=" + format_matrix(a) + " B=" + format_matrix(b);
      if (mccoy_rank(prod) > std::min(mccoy_rank(a), mccoy_rank(b)))
        return "rk(AB) > min for A=" + format_matrix(a) + " B=" + format_matrix(b);
    }
    return std::nullopt;
  });
  cr.run("determinant_multiplicative", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    for (int t = 0; t < 200; ++t) {
      const Matrix a = random_matrix(rng, 3, 3, ctx);
      const Matrix b = random_matrix(rng, 3, 3, ctx);
      if (determinant(a * b) != ctx.mul(determinant(a), determinant(b)))
        return "det(AB) != det(A)det(B) for A=" + format_matrix(a) + " B=" + format_matrix(b);
    }
    return std::nullopt;
  });
  cr.run("invertibility_trio", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    for (int t = 0; t < 200; ++t) {
      const Matrix a = random_matrix(rng, 3, 3, ctx);
      const bool inv = is_invertible(a);
      if (inv != ctx.is_unit(determinant(a))) return "invertible <=> unit det failed";
      if (inv != (mccoy_rank(a) == 3)) return "invertible <=> full McCoy rank failed";
      if (inv && invert(a) * a != Matrix::identity(3, ctx))
        return "A^{-1} A != I for A=" + format_matrix(a);
    }
    return std::nullopt;
  });
}

void suite_subspace(CheckRunner& cr, const RingContext& ctx, u64 n, u64 m) {
  cr.run("count_matches_enumeration", [&](std::mt19937_64&) -> std::optional<std::string> {
    const auto all = enumerate_subspaces(ctx, n, m);
    if (all.size() != count_subspaces(ctx, n, m))
      return "enumerated " + std::to_string(all.size()) + " != formula " +
             std::to_string(count_subspaces(ctx, n, m));
    std::vector<Subspace> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    for (u64 i = 1; i < sorted.size(); ++i)
      if (sorted[i - 1] == sorted[i]) return "enumeration emitted a duplicate";
    for (u64 i = 0; i < all.size(); i += 17)
      if (canonicalize_subspace(all[i].basis()) != all[i]) return "member not canonical";
    return std::nullopt;
  });
  cr.run("dimension_formula_sampled", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    const auto all = enumerate_subspaces(ctx, n, m);
    std::uniform_int_distribution<u64> pick(0, all.size() - 1);
    for (int t = 0; t < 100; ++t) {
      const Subspace& a = all[pick(rng)];
      const Subspace& b = all[pick(rng)];
      const LinearSubset meet = intersection_module(a, b);
      if (join_dimension(a, b) + meet.dim != a.dim() + b.dim())
        return "dim(A v B) + dim(A ^ B) != dim A + dim B for A=" + format_matrix(a.basis()) +
               " B=" + format_matrix(b.basis());
    }
    return std::nullopt;
  });
  cr.run("duality_involution_sampled", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    const auto all = enumerate_subspaces(ctx, n, m);
    std::uniform_int_distribution<u64> pick(0, all.size() - 1);
    for (int t = 0; t < 100; ++t) {
      const Subspace& a = all[pick(rng)];
      const Subspace d = dual_subspace(a);
      if (d.dim() != n - m) return "dim A + dim A-perp != n for A=" + format_matrix(a.basis());
      if (dual_subspace(d) != a) return "double dual != identity for A=" + format_matrix(a.basis());
      const Subspace& b = all[pick(rng)];
      if (arithmetic_distance(a, b) != arithmetic_distance(d, dual_subspace(b)))
        return "ad not duality invariant for A=" + format_matrix(a.basis()) +
               " B=" + format_matrix(b.basis());
    }
    return std::nullopt;
  });
  cr.run("canonical_pair_profiles", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    // canonical_pair re-checks its own reconstruction and throws on failure.
    const auto all = enumerate_subspaces(ctx, n, m);
    std::uniform_int_distribution<u64> pick(0, all.size() - 1);
    for (int t = 0; t < 60; ++t) {
      const Subspace& a = all[pick(rng)];
      const Subspace& b = all[pick(rng)];
      if (a.contains_subspace(b)) continue;  // pair reduction rejects nested pairs
      const CanonicalPair cp = canonical_pair(a, b);
      for (u64 i = 1; i < cp.exponents.size(); ++i)
        if (cp.exponents[i - 1] > cp.exponents[i]) return "exponent profile not sorted";
    }
    return std::nullopt;
  });
}

void suite_bilinear(CheckRunner& cr, const RingContext& ctx, u64 bm, u64 bn) {
  // The bilinear constructions need both dimensions >= 2; verify runs on the
  // Grassmann parameters, so clamp rather than reject small m or n.
  bm = std::max<u64>(bm, 2);
  bn = std::max<u64>(bn, 2);
  cr.run("type_one_family_is_clique", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    const Matrix pmat = random_invertible(rng, bm, ctx);
    const Matrix a = random_matrix(rng, bm, bn, ctx);
    const auto fam = bf_maximal_clique(BfCliqueKind::one, pmat, a);
    if (fam.size() != detail::checked_p_pow(ctx.p, ctx.s * bn))
      return "type one family size != p^{sn}";
    for (u64 i = 0; i < fam.size(); ++i)
      for (u64 j = i + 1; j < fam.size(); ++j)
        if (!bf_adjacent(fam[i], fam[j]))
          return "family members not adjacent: " + format_matrix(fam[i]) + " vs " +
                 format_matrix(fam[j]);
    if (classify_bf_maximum_clique(fam) != BfCliqueClass::type_one)
      return "type one family did not classify as type one";
    return std::nullopt;
  });
  cr.run("type_two_family_is_clique", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    const Matrix qmat = random_invertible(rng, bn, ctx);
    const Matrix a = random_matrix(rng, bm, bn, ctx);
    const auto fam = bf_maximal_clique(BfCliqueKind::two, qmat, a);
    if (fam.size() != detail::checked_p_pow(ctx.p, ctx.s * bm))
      return "type two family size != p^{sm}";
    for (u64 i = 0; i < fam.size(); ++i)
      for (u64 j = i + 1; j < fam.size(); ++j)
        if (!bf_adjacent(fam[i], fam[j]))
          return "family members not adjacent: " + format_matrix(fam[i]) + " vs " +
                 format_matrix(fam[j]);
    if (classify_bf_maximum_clique(fam) != BfCliqueClass::type_two)
      return "type two family did not classify as type two";
    return std::nullopt;
  });
  cr.run("omega_alpha_exact", [&](std::mt19937_64&) -> std::optional<std::string> {
    const BilinearGraph bg(ctx, bm, bn);
    if (bg.vertex_count() > 512)
      throw BudgetExceeded();  // exact search only at desk scale; report as skipped
    const BitGraph adj = bg.build_adjacency();
    const u64 omega = maximum_clique(adj).size();
    if (omega != bf_clique_number(ctx, bm, bn))
      return "omega " + std::to_string(omega) + " != formula " +
             std::to_string(bf_clique_number(ctx, bm, bn));
    const u64 alpha = maximum_independent_set(adj).size();
    if (alpha != bf_independence_number(ctx, bm, bn))
      return "alpha " + std::to_string(alpha) + " != formula " +
             std::to_string(bf_independence_number(ctx, bm, bn));
    return std::nullopt;
  });
}

void suite_grassmann(CheckRunner& cr, const RingContext& ctx, u64 n, u64 m) {
  cr.run("vertex_count_matches_formula", [&](std::mt19937_64&) -> std::optional<std::string> {
    const GrassmannGraph g(ctx, n, m);
    if (g.size() != count_subspaces(ctx, n, m)) return "vertex count != subspace count formula";
    return std::nullopt;
  });
  cr.run("valency_every_vertex", [&](std::mt19937_64&) -> std::optional<std::string> {
    const GrassmannGraph g(ctx, n, m);
    const u64 expect = valency_formula(ctx, n, m);
    for (u64 v = 0; v < g.size(); ++v)
      if (g.adjacency().degree(v) != expect)
        return "vertex " + std::to_string(v) + " degree " +
               std::to_string(g.adjacency().degree(v)) + " != " + std::to_string(expect);
    return std::nullopt;
  });
  cr.run("mc_valency_matches_formula", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    const GrassmannGraph g(ctx, n, m);
    const u64 expect = mc_valency_formula(ctx, n, m);
    std::uniform_int_distribution<u64> pick(0, g.size() - 1);
    for (int t = 0; t < 5; ++t) {
      const u64 v = pick(rng);
      if (g.mc_degree(v) != expect)
        return "vertex " + std::to_string(v) + " mc degree " + std::to_string(g.mc_degree(v)) +
               " != " + std::to_string(expect);
    }
    return std::nullopt;
  });
  cr.run("distance_equals_arithmetic_sampled", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    const GrassmannGraph g(ctx, n, m);
    std::uniform_int_distribution<u64> pick(0, g.size() - 1);
    for (int t = 0; t < 200; ++t) {
      const u64 a = pick(rng), b = pick(rng);
      if (static_cast<u64>(g.graph_distance(a, b)) !=
          arithmetic_distance(g.vertex(a), g.vertex(b)))
        return "graph distance != arithmetic distance for ids " + std::to_string(a) + "," +
               std::to_string(b);
    }
    return std::nullopt;
  });
  cr.run("stars_and_tops_are_cliques", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    const auto centers = enumerate_subspaces(ctx, n, m - 1);
    const auto covers = enumerate_subspaces(ctx, n, m + 1);
    std::uniform_int_distribution<u64> pc(0, centers.size() - 1), pq(0, covers.size() - 1);
    const auto st = star(centers[pc(rng)], m);
    if (st.size() != star_size_formula(ctx, n, m)) return "star size != formula";
    for (u64 i = 0; i < st.size(); ++i)
      for (u64 j = i + 1; j < st.size(); ++j)
        if (!grassmann_adjacent(st[i], st[j])) return "star is not a clique";
    const auto tp = top(covers[pq(rng)], m);
    if (tp.size() != top_size_formula(ctx, m)) return "top size != formula";
    for (u64 i = 0; i < tp.size(); ++i)
      for (u64 j = i + 1; j < tp.size(); ++j)
        if (!grassmann_adjacent(tp[i], tp[j])) return "top is not a clique";
    return std::nullopt;
  });
  cr.run("star_top_intersection_law", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    // |star(P) ^ top(Q)| = p^{s-1}(p+1) whenever P inside Q.
    const auto covers = enumerate_subspaces(ctx, n, m + 1);
    std::uniform_int_distribution<u64> pq(0, covers.size() - 1);
    for (int t = 0; t < 10; ++t) {
      const Subspace& q = covers[pq(rng)];
      const auto inside = subspaces_within(q, m - 1);
      std::uniform_int_distribution<u64> pi(0, inside.size() - 1);
      const Subspace& p = inside[pi(rng)];
      const auto meet = star_top_intersection(p, q, m);
      if (meet.size() != ctx.p_power(ctx.s - 1) * (ctx.p + 1))
        return "star/top intersection size " + std::to_string(meet.size()) +
               " != p^{s-1}(p+1) for P=" + format_matrix(p.basis()) +
               " Q=" + format_matrix(q.basis());
    }
    return std::nullopt;
  });
  cr.run("mc_star_pairs_meet_once", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    const auto centers = enumerate_subspaces(ctx, n, m - 1);
    if (centers.size() < 2) return std::nullopt;  // m = 1: single center, nothing to pair
    std::uniform_int_distribution<u64> pc(0, centers.size() - 1);
    int seen = 0;
    for (int t = 0; t < 4000 && seen < 15; ++t) {
      const Subspace& a = centers[pc(rng)];
      const Subspace& b = centers[pc(rng)];
      if (a == b || !mc_adjacent(a, b)) continue;
      ++seen;
      const auto meet = star_intersection(a, b, m);
      if (meet.size() != 1)
        return "mc-adjacent star centers meet in " + std::to_string(meet.size()) +
               " vertices for P1=" + format_matrix(a.basis()) + " P2=" + format_matrix(b.basis());
      if (meet.front() != vertex_from_mc_pair(a, b)) return "star meet != extracted join vertex";
    }
    if (seen == 0) return "no mc-adjacent center pair sampled";
    return std::nullopt;
  });
}

void suite_automorphism(CheckRunner& cr, const RingContext& ctx, u64 n, u64 m) {
  cr.run("linear_maps_verify", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    const GrassmannGraph g(ctx, n, m);
    for (int t = 0; t < 8; ++t) {
      const Matrix u = random_invertible(rng, n, ctx);
      if (!verify_automorphism(g, automorphism_linear(g, u)))
        return "X -> XU failed to verify for U=" + format_matrix(u);
    }
    return std::nullopt;
  });
  cr.run("kernel_is_unit_scalars", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    const GrassmannGraph g(ctx, n, m);
    std::vector<u64> id(g.size());
    for (u64 i = 0; i < g.size(); ++i) id[i] = i;
    for (u64 lam = 1; lam < ctx.q; ++lam) {
      if (!ctx.is_unit(lam)) continue;
      Matrix u = Matrix::identity(n, ctx);
      for (u64 i = 0; i < n; ++i) u.set(i, i, lam);
      if (automorphism_linear(g, u).perm != id)
        return "scalar " + std::to_string(lam) + " I acted non-trivially";
    }
    for (int t = 0; t < 20; ++t) {
      const Matrix u = random_invertible(rng, n, ctx);
      bool scalar = true;
      for (u64 i = 0; i < n && scalar; ++i)
        for (u64 j = 0; j < n && scalar; ++j)
          if (u(i, j) != (i == j ? u(0, 0) : 0)) scalar = false;
      if (!scalar && automorphism_linear(g, u).perm == id)
        return "non-scalar U acted trivially: U=" + format_matrix(u);
    }
    return std::nullopt;
  });
  cr.run("dual_family_at_half_dimension", [&](std::mt19937_64& rng) -> std::optional<std::string> {
    const GrassmannGraph g(ctx, n, m);
    if (n != 2 * m) {
      try {
        (void)automorphism_dual(g, Matrix::identity(n, ctx));
        return "dual map accepted although n != 2m";
      } catch (const DualRequiresHalfDimension&) {
        return std::nullopt;
      }
    }
    for (int t = 0; t < 4; ++t) {
      const Matrix u = random_invertible(rng, n, ctx);
      if (!verify_automorphism(g, automorphism_dual(g, u)))
        return "X -> (XU)-perp failed to verify for U=" + format_matrix(u);
    }
    return std::nullopt;
  });
  cr.run("duality_is_isomorphism", [&](std::mt19937_64&) -> std::optional<std::string> {
    const GrassmannGraph g(ctx, n, m);
    const GrassmannGraph gd(ctx, n, n - m);
    if (!verify_isomorphism(g, gd, dual_graph_map(g, gd)))
      return "dual map is not an isomorphism onto G(n, n-m)";
    return std::nullopt;
  });
}

int cmd_verify(const Options& opt) {
  const RingContext ctx(opt.p, opt.s);
  const u64 cap = opt.budget ? *opt.budget : Budget::instance().cap();
  std::vector<std::string> suites = opt.suites;
  if (suites.empty())
    suites = {"ring", "matrix", "subspace", "bilinear", "grassmann", "automorphism"};

  std::vector<CheckResult> all;
  for (const std::string& name : suites) {
    CheckRunner cr(name, cap, opt.seed);
    if (name == "ring")
      suite_ring(cr, ctx);
    else if (name == "matrix")
      suite_matrix(cr, ctx);
    else if (name == "subspace")
      suite_subspace(cr, ctx, opt.n, opt.m);
    else if (name == "bilinear")
      suite_bilinear(cr, ctx, opt.m, opt.n);
    else if (name == "grassmann")
      suite_grassmann(cr, ctx, opt.n, opt.m);
    else if (name == "automorphism")
      suite_automorphism(cr, ctx, opt.n, opt.m);
    else
      throw ParameterRange("unknown suite: " + name);
    all.insert(all.end(), cr.results.begin(), cr.results.end());
  }

  u64 passed = 0, failed = 0, skipped = 0;
  for (const auto& c : all) (c.skipped ? skipped : c.pass ? passed : failed)++;
  std::cout << "verify: " << passed << " passed, " << failed << " failed, " << skipped
            << " skipped\n";

  if (!opt.report.empty()) {
    json j{{"params", {{"p", opt.p}, {"s", opt.s}, {"n", opt.n}, {"m", opt.m}}},
           {"seed", opt.seed},
           {"checks", all}};
    open_or_throw(opt.report) << j.dump(2) << "\n";
  }
  return failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// aut: check a user-supplied U against the graph it should act on.

int cmd_aut(const Options& opt) {
  std::ifstream f(opt.ufile);
  if (!f) throw Error("cannot read matrix file: " + opt.ufile);
  json ju;
  try {
    f >> ju;
  } catch (const json::exception& e) {
    throw Error(std::string("matrix file is not valid JSON: ") + e.what());
  }
  const Matrix u = matrix_from_json(ju);
  if (u.rows() != u.cols()) throw ParameterRange("aut needs a square matrix");
  const RingContext ctx = u.context();
  const u64 n = u.rows();
  if (opt.m < 1 || opt.m >= n) throw ParameterRange("aut needs 1 <= m < n");

  std::cout << "U: " << n << "x" << n << " over Z_" << ctx.q << "\n";
  if (!is_invertible(u)) {
    std::cout << "U is singular: no induced vertex map\n";
    return 1;
  }
  std::cout << "U is invertible\n";

  const GrassmannGraph g(ctx, n, opt.m);
  json report{{"params", {{"p", ctx.p}, {"s", ctx.s}, {"n", n}, {"m", opt.m}}},
              {"invertible", true},
              {"maps", json::array()}};

  bool all_ok = true;
  const VertexMap lin = automorphism_linear(g, u);
  const bool lin_ok = verify_automorphism(g, lin);
  all_ok = all_ok && lin_ok;
  bool is_identity = true;
  for (u64 i = 0; i < lin.perm.size(); ++i)
    if (lin.perm[i] != i) is_identity = false;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a_digest(lin.perm)));
  std::cout << "linear map X -> XU: " << (lin_ok ? "verified" : "FAILED") << ", digest " << buf
            << (is_identity ? " (identity automorphism)" : "") << "\n";
  report["maps"].push_back({{"kind", "linear"}, {"verified", lin_ok}, {"digest", buf}});

  if (n == 2 * opt.m) {
    const VertexMap dua = automorphism_dual(g, u);
    const bool dua_ok = verify_automorphism(g, dua);
    all_ok = all_ok && dua_ok;
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a_digest(dua.perm)));
    std::cout << "dual map X -> (XU)-perp: " << (dua_ok ? "verified" : "FAILED") << ", digest "
              << buf << "\n";
    report["maps"].push_back({{"kind", "dual_linear"}, {"verified", dua_ok}, {"digest", buf}});
  }

  if (!opt.report.empty()) open_or_throw(opt.report) << report.dump(2) << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact linear algebra over Z_{p^s}: subspace enumeration, Grassmann and "
               "bilinear-forms graphs, verification suites"};
  app.require_subcommand(1);

  Options opt;
  auto add_params = [&](CLI::App* sub, bool with_nm) {
    sub->add_option("--p", opt.p, "prime modulus base");
    sub->add_option("--s", opt.s, "prime power exponent");
    if (with_nm) {
      sub->add_option("--n", opt.n, "ambient dimension / matrix columns");
      sub->add_option("--m", opt.m, "subspace dimension / matrix rows");
    }
    sub->add_option("--budget", opt.budget, "work budget (ops); env ZGRASS_BUDGET otherwise");
    sub->add_option("--seed", opt.seed, "seed for sampled checks");
  };

  CLI::App* c_enum = app.add_subcommand("enum", "emit all m-subspaces as JSONL plus a summary");
  add_params(c_enum, true);
  c_enum->add_option("--out", opt.out, "JSONL output path (default stdout)");

  CLI::App* c_graph = app.add_subcommand("graph", "build a graph and report formula-vs-measured");
  add_params(c_graph, true);
  c_graph->add_option("--family", opt.family, "grassmann (default) or bilinear");
  c_graph->add_option("--report", opt.report, "JSON report path (default stdout)");
  c_graph->add_option("--export", opt.export_fmt, "dot or csv adjacency export")
      ->check(CLI::IsMember({"dot", "csv"}));
  c_graph->add_option("--out", opt.out, "export path (default derived from parameters)");

  CLI::App* c_verify = app.add_subcommand("verify", "run property suites with pass/fail output");
  add_params(c_verify, true);
  c_verify->add_option("--suite", opt.suites,
                       "suite name (repeatable): ring matrix subspace bilinear grassmann "
                       "automorphism; default all");
  c_verify->add_option("--report", opt.report, "JSON report path");

  CLI::App* c_aut = app.add_subcommand("aut", "check the maps induced by a matrix U");
  c_aut->add_option("ufile", opt.ufile, "matrix JSON file {p,s,rows,cols,entries}")->required();
  c_aut->add_option("--m", opt.m, "subspace dimension of the acted-on graph");
  c_aut->add_option("--budget", opt.budget, "work budget (ops)");
  c_aut->add_option("--seed", opt.seed, "seed (unused; accepted for uniformity)");
  c_aut->add_option("--report", opt.report, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (opt.budget)
    zgrass::Budget::instance().reset(*opt.budget);
  else
    zgrass::Budget::instance().reset();

  try {
    if (app.got_subcommand(c_enum)) return cmd_enum(opt);
    if (app.got_subcommand(c_graph)) return cmd_graph(opt);
    if (app.got_subcommand(c_verify)) return cmd_verify(opt);
    return cmd_aut(opt);
  } catch (const zgrass::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << " (raise --budget or ZGRASS_BUDGET)\n";
    return 2;
  } catch (const zgrass::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
