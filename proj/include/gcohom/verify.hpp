#pragma once

// The verification corpus and the invariant suites run over it. Shared by
// the `verify` subcommand and the acceptance binary.

#include "gcohom/perturb.hpp"
#include "gcohom/simplicial.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gcohom {

struct CorpusEntry {
  std::string algebra;  ///< "builtin:<spec>" or "dga:<name>"
  std::string graph;
  DGAlgebra dga;
  Graph g;
  bool formal = true;  ///< zero differential

  std::string label() const;
  const Ring& ring() const { return dga.ring(); }
};

struct SuiteResult {
  std::string name;
  std::vector<CheckReport> reports;
  double seconds = 0;

  bool ok() const;
  std::size_t failures() const;
  std::string json() const;
};

namespace verify {

constexpr std::uint64_t kDefaultSeed = 20240229;

/// "builtin:<spec>" (graded, d = 0), "dga:<name>", a bare DG model name, or a
/// JSON file. Builtins are built over `ring`; files carry their own ring.
DGAlgebra load_algebra(const std::string& spec, Ring ring);

/// Fixed entries over Q, F2, F3 and Z plus a few seeded random graphs with
/// loops and multi-edges.
std::vector<CorpusEntry> corpus(std::uint64_t seed = kDefaultSeed);

std::vector<std::string> suite_names();
/// Throws InputError for an unknown suite.
SuiteResult run_suite(const std::string& name, const std::vector<CorpusEntry>& corpus);

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> suites;
};
const std::vector<Criterion>& criteria();

/// Looks for an a (x) a (x) b type class in E_2^{0,*} of C(G) whose d_2 is
/// nonzero on E_2 and equals the signed m_3 of the tree formula.
CheckReport massey_witness(const DGAlgebra& a, const Graph& g, const Reduction& r);

}  // namespace verify
}  // namespace gcohom
