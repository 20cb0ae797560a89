#include "gcohom/graph_complex.hpp"
#include "gcohom/perturb.hpp"
#include "gcohom/simplicial.hpp"
#include "gcohom/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

using namespace gcohom;
namespace pt = gcohom::perturb;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kInput = 1, kCap = 2, kVerify = 3 };

struct RunConfig {
  std::string algebra, dga, graph, complex, ring = "Q", format = "text", selector;
  int pages = 0;  // 0: all pages
  bool compare = false;
  std::size_t cap = simplicial::kDefaultCap;
  std::uint64_t seed = verify::kDefaultSeed;
};

std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

// Sum over edge subsets of dim A^{number of components}.
double generator_estimate(const DGAlgebra& a, const Graph& g) {
  double total = 0;
  const EdgeMask all = g.all_edges();
  for (EdgeMask s = 0;; s = (s - all) & all) {
    total += std::pow(static_cast<double>(a.dim()), graph::components(g, s).count);
    if (s == all) break;
  }
  return total;
}

void check_cap(const RunConfig& cfg, const DGAlgebra& a, const Graph& g) {
  const double n = generator_estimate(a, g);
  if (n > static_cast<double>(cfg.cap))
    throw ResourceLimitError("graph complex would have " + std::to_string(static_cast<long long>(n)) +
                             " generators, above the cap of " + std::to_string(cfg.cap));
}

DGAlgebra algebra_of(const RunConfig& cfg, Ring ring) {
  if (!cfg.dga.empty() && !cfg.algebra.empty()) throw InputError("give either --algebra or --dga, not both");
  if (!cfg.dga.empty()) return verify::load_algebra(cfg.dga, ring);
  if (cfg.algebra.empty()) throw InputError("missing --algebra or --dga");
  return verify::load_algebra(cfg.algebra, ring);
}

Graph graph_of(const RunConfig& cfg) {
  if (cfg.graph.empty()) throw InputError("missing --graph");
  return graph::load(cfg.graph);
}

int cmd_cohomology(const RunConfig& cfg) {
  const Ring ring = Ring::parse(cfg.ring);
  DGAlgebra a = algebra_of(cfg, ring);
  Graph g = graph_of(cfg);
  check_cap(cfg, a, g);
  GraphComplex c(a, g);
  BettiTable b = graphcohom::cohomology(c);
  std::cout << (cfg.format == "json" ? graphcohom::json_report(c, b) + "\n" : graphcohom::text_report(c, b));
  return kOk;
}

std::string grid(const std::map<GradeKey, std::size_t>& cells) {
  if (cells.empty()) return "  (zero)\n";
  int p0 = INT_MAX, p1 = INT_MIN, q0 = INT_MAX, q1 = INT_MIN;
  for (const auto& [k, v] : cells) {
    p0 = std::min(p0, k.first), p1 = std::max(p1, k.first);
    q0 = std::min(q0, k.second), q1 = std::max(q1, k.second);
  }
  std::ostringstream os;
  os << std::setw(6) << "q\\p";
  for (int p = p0; p <= p1; ++p) os << std::setw(5) << p;
  os << "\n";
  for (int q = q1; q >= q0; --q) {
    os << std::setw(6) << q;
    for (int p = p0; p <= p1; ++p) {
      auto it = cells.find({p, q});
      if (it == cells.end() || it->second == 0)
        os << std::setw(5) << ".";
      else
        os << std::setw(5) << it->second;
    }
    os << "\n";
  }
  return os.str();
}

ojson cells_json(const std::map<GradeKey, std::size_t>& cells) {
  ojson out = ojson::array();
  for (const auto& [k, v] : cells)
    if (v) out.push_back({{"p", k.first}, {"q", k.second}, {"value", v}});
  return out;
}

int cmd_ss(const RunConfig& cfg) {
  const Ring ring = Ring::parse(cfg.ring);
  if (!ring.is_field()) throw InputError("ss: the ring must be a field (Q or F_p)");
  DGAlgebra a = algebra_of(cfg, ring);
  Graph g = graph_of(cfg);
  check_cap(cfg, a, g);
  if (cfg.pages < 0) throw InputError("--pages must be positive");

  Reduction r = pt::reduce_algebra(a);
  pt::ColumnReduction cr = pt::column_reduction(a, g, r);
  std::vector<SparseMatrix> dops = pt::d_operators(cr);
  SpectralSequence ss = pt::spectral_sequence(cr.big.bicomplex());
  const bool formal = a.has_zero_differential();
  CheckReport deg = pt::degeneration_check(ss, g, formal);

  // E_r = E_infinity from the first page after which every differential vanishes
  int settled = 1;
  for (const auto& page : ss.pages)
    for (const auto& [k, v] : page.rank)
      if (v) settled = page.r + 1;

  const int finite = static_cast<int>(ss.pages.size());
  const int shown = cfg.pages ? std::min(cfg.pages, finite) : finite;

  std::vector<std::set<GradeKey>> support(dops.size());
  for (std::size_t i = 0; i < dops.size(); ++i) {
    const auto& cols = dops[i].columns();
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (!cols[j].empty()) support[i].insert({cr.small.generator(j).p, cr.small.generator(j).q});
  }

  if (cfg.format == "json") {
    ojson j;
    j["graph"] = g.to_string();
    j["ring"] = ring.name();
    j["pages"] = ojson::array();
    for (int t = 1; t <= shown; ++t) {
      const SsPage& page = ss.page(t);
      j["pages"].push_back({{"r", page.r}, {"dim", cells_json(page.dim)}, {"rank", cells_json(page.rank)}});
    }
    j["d"] = ojson::array();
    for (std::size_t i = 0; i < support.size(); ++i) {
      ojson s = ojson::array();
      for (auto [p, q] : support[i]) s.push_back({p, q});
      j["d"].push_back({{"i", i + 1}, {"support", s}});
    }
    j["degenerate_at"] = settled;
    j["degeneration"] = ojson::parse(deg.json());
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "graph " << g.to_string() << ", ring " << ring.name() << ", " << cr.small.size()
              << " generators after reduction\n";
    for (int t = 1; t <= shown; ++t) {
      const SsPage& page = ss.page(t);
      std::cout << "E_" << page.r << " dimensions\n" << grid(page.dim);
      std::cout << "rank of the differential on E_" << page.r << ":";
      bool any = false;
      for (const auto& [k, v] : page.rank)
        if (v) {
          std::cout << " (" << k.first << "," << k.second << ")->" << v;
          any = true;
        }
      std::cout << (any ? "\n" : " none\n");
    }
    for (std::size_t i = 0; i < support.size(); ++i) {
      std::cout << "d_" << i + 1 << " nonzero on";
      if (support[i].empty()) std::cout << " nothing";
      for (auto [p, q] : support[i]) std::cout << " (" << p << "," << q << ")";
      std::cout << "\n";
    }
    std::cout << "degenerate at E_" << settled << "\n";
    std::cout << "degeneration bound (from E_" << deg.witness.at("from_page") << "): " << verdict(deg.ok) << "\n";
    if (!deg.ok) std::cout << deg.json() << "\n";
  }
  return deg.ok ? kOk : kVerify;
}

int cmd_config_space(const RunConfig& cfg) {
  const Ring ring = Ring::parse(cfg.ring);
  if (cfg.complex.empty()) throw InputError("missing --complex");
  SimplicialSet x = simplicial::load(cfg.complex);
  Graph g = graph_of(cfg);

  std::map<int, std::size_t> relative;
  bool ok = true;
  ojson j;
  std::ostringstream text;
  if (cfg.compare) {
    Theorem1Report rep = simplicial::compare_with_graph_complex(x, g, ring, cfg.cap);
    relative = rep.relative;
    ok = rep.ok();
    j["e1"] = {{"status", rep.e1.ok ? "pass" : "fail"}, {"detail", rep.e1.detail}};
    j["total"] = {{"status", rep.total.ok ? "pass" : "fail"}, {"detail", rep.total.detail}};
    j["les"] = {{"status", rep.les.ok ? "pass" : "fail"}, {"detail", rep.les.detail}};
    j["euler_equal"] = rep.euler_equal;
    j["poincare_equal"] = rep.poincare_equal;
    ojson gt = ojson::object();
    for (auto [n, v] : rep.graph_total) gt[std::to_string(n)] = v;
    j["graph_total"] = gt;
    text << "cup ring dim " << rep.cup.dim() << "\n";
    text << "E_1 against C_A(G): " << verdict(rep.e1.ok) << (rep.e1.ok ? "" : "  " + rep.e1.detail) << "\n";
    text << "total cohomology against H(X^n, Z_G): " << verdict(rep.total.ok)
         << (rep.total.ok ? "" : "  " + rep.total.detail) << "\n";
    text << "long exact sequence: " << verdict(rep.les.ok) << (rep.les.ok ? "" : "  " + rep.les.detail) << "\n";
    text << "Euler characteristic equal: " << (rep.euler_equal ? "yes" : "no") << "\n";
    text << "Poincare series equal to H(C_A(G)): " << (rep.poincare_equal ? "yes" : "no") << "\n";
    text << "agreement: " << verdict(ok) << "\n";
    j["agreement"] = ok ? "pass" : "fail";
  } else {
    SimplicialSet xn = simplicial::power(x, g.vertex_count(), cfg.cap);
    RelativeCohomology rel = simplicial::relative_cohomology(xn, simplicial::diagonal_union(xn, g), ring);
    relative = rel.table.by_degree();
    ok = rel.les.ok;
    if (!ok) text << "long exact sequence: FAIL  " << rel.les.detail << "\n";
  }

  std::ostringstream head;
  head << "graph " << g.to_string() << ", ring " << ring.name() << "\n";
  head << "rank H^n(X^" << g.vertex_count() << ", Z_G):";
  bool any = false;
  ojson rj = ojson::object();
  for (auto [n, v] : relative)
    if (v) {
      head << " n=" << n << ":" << v;
      rj[std::to_string(n)] = v;
      any = true;
    }
  head << (any ? "\n" : " all zero\n");
  if (cfg.format == "json") {
    ojson out;
    out["graph"] = g.to_string();
    out["ring"] = ring.name();
    out["relative"] = rj;
    for (auto& [k, v] : j.items()) out[k] = v;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << head.str() << text.str();
  }
  return ok ? kOk : kVerify;
}

int cmd_verify(const RunConfig& cfg) {
  std::vector<std::string> suites = verify::suite_names();
  if (!cfg.selector.empty()) {
    if (std::find(suites.begin(), suites.end(), cfg.selector) == suites.end())
      throw InputError("unknown suite '" + cfg.selector + "'");
    suites = {cfg.selector};
  }
  const std::vector<CorpusEntry> corpus = verify::corpus(cfg.seed);
  bool ok = true;
  ojson summary;
  summary["seed"] = cfg.seed;
  summary["suites"] = ojson::array();
  for (const auto& name : suites) {
    SuiteResult res = verify::run_suite(name, corpus);
    ok = ok && res.ok();
    if (cfg.format == "json") {
      summary["suites"].push_back(ojson::parse(res.json()));
    } else {
      std::cout << std::left << std::setw(22) << name << verdict(res.ok()) << "  " << res.reports.size() << " checks, "
                << res.failures() << " failed\n";
      for (const auto& r : res.reports)
        if (!r.ok) std::cout << "  " << r.json() << "\n";
    }
  }
  if (cfg.format == "json") {
    summary["status"] = ok ? "pass" : "fail";
    std::cout << summary.dump() << "\n";
  }
  return ok ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of graph complexes, their spectral sequences and configuration spaces"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--ring", cfg.ring, "Q, Z or F<p>")->capture_default_str();
    sub->add_option("--format", cfg.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--cap", cfg.cap, "resource cap (generators or simplices)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  CLI::App* coh = app.add_subcommand("cohomology", "bigraded cohomology of C_A(G)");
  coh->add_option("--algebra", cfg.algebra, "builtin:<spec>, a DG model name, or a JSON file");
  coh->add_option("--dga", cfg.dga, "DG model name or JSON file");
  coh->add_option("--graph", cfg.graph, "builtin graph or JSON file");
  common(coh);

  CLI::App* ss = app.add_subcommand("ss", "spectral sequence of C_A(G) via perturbation");
  ss->add_option("--dga", cfg.dga, "DG model name or JSON file");
  ss->add_option("--algebra", cfg.algebra, "builtin:<spec>, a DG model name, or a JSON file");
  ss->add_option("--graph", cfg.graph, "builtin graph or JSON file");
  ss->add_option("--pages", cfg.pages, "print pages E_1 .. E_pages")->check(CLI::PositiveNumber);
  common(ss);

  CLI::App* cs = app.add_subcommand("config-space", "relative cohomology H(X^n, Z_G)");
  cs->add_option("--complex", cfg.complex, "builtin complex or JSON file");
  cs->add_option("--graph", cfg.graph, "builtin graph or JSON file");
  cs->add_flag("--compare", cfg.compare, "compare with the graph complex of the cup ring");
  common(cs);

  CLI::App* ver = app.add_subcommand("verify", "run the invariant suites over the corpus");
  ver->add_option("selector", cfg.selector, "run only this suite");
  ver->add_option("--seed", cfg.seed, "seed for the random corpus entries")->capture_default_str();
  common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (coh->parsed()) return cmd_cohomology(cfg);
    if (ss->parsed()) return cmd_ss(cfg);
    if (cs->parsed()) return cmd_config_space(cfg);
    return cmd_verify(cfg);
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kCap;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
}
