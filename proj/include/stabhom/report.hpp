#pragma once
// Reproducible check reports and the batch suites behind the CLI: named
// acceptance suites (h3, h4, connectivity, csd, polydeg, wcm, join) plus
// one-off complex and module evaluation.  JSON output is byte-identical
// across runs; runtimes appear only in the human-readable table.

#include <optional>
#include <string>
#include <vector>

#include "stabhom/complexes.hpp"
#include "stabhom/stabmod.hpp"

namespace stabhom {

struct CheckRecord {
  std::string claim;     // what was checked, self-contained
  std::string anchor;    // the mathematical statement exercised
  std::string computed;  // what the computation produced
  std::string status;    // "pass" | "fail" | "measured" | "skipped (cap)"
  std::string tier;      // "Z" | "F_2" | "F_3" | "F_5" | "none"
  double runtime = 0.0;  // seconds; table output only, never in JSON
};

struct Report {
  std::string schema = "stabhom-report/1";
  std::string version = "0.1.0";
  std::string tool;  // subcommand that produced the report
  std::vector<std::pair<std::string, std::string>> input;  // ordered echo
  std::vector<CheckRecord> checks;

  bool all_passed() const;     // no "fail" record
  std::string to_json() const;  // deterministic; runtime omitted
  std::string to_table() const;
};

// Vanishing of the trivial module's central stability homology.  For the
// symmetric-group category: degrees -1..n-2 vanish and the top rank is the
// derangement number, 2 <= n <= max_n.  For the general linear category:
// degrees with n > 2i + 2, integrally for n <= 4 and over the given primes
// (streamed column rank) at n = 5.
Report run_h3_suite(const CategoryId& cat, int max_n, const std::vector<int>& primes);

// Vanishing for cokernels of free modules: over the symmetric-group category
// H-tilde_i(coker M(m))_n = 0 for n > i + m + 1 (m <= 2); over the general
// linear category for n > 2(i + m) + 2 (m <= 1, i <= 0).
Report run_h4_suite(const CategoryId& cat, int max_n);

// Relative partial-basis vanishing over F_2 (general linear category):
// H-tilde_i(PB(U, W)) = 0 for i <= rk U - rk W - 2, over every splittable
// pair W <= U in F_2^n, n <= max_n.  For the symplectic category: vertex
// counts of the symplectic partial basis complex and 0-connectivity through
// the given genus (genus 4 via on-the-fly union-find).
Report run_connectivity_suite(const CategoryId& cat, int max_n);

// Coequalizer isomorphism ranks and the verified stability-degree window.
Report run_csd_suite(const std::string& builtin, int max_n);

// what = "free-fi": degree <= m, zero kernel, and levelwise cokernel
// comparison for M(m), m <= 3; otherwise a builtin module name.
Report run_polydeg_suite(const std::string& what, int max_n);

// weak Cohen-Macaulay surrogate for the plain partial basis complex of F_2^n.
Report run_wcm_suite(int n);

// join-complex structure of the frame-forgetting map over every splittable
// pair in F_2^n.
Report run_join_suite(int n);

struct ComplexRequest {
  CategoryId cat;
  int n = 0;       // rank (genus for the symplectic category)
  std::string kind = "k";  // k | pb | pbc | spb
  std::optional<Submodule> U, W;
  int max_dim = -1;
  bool homology = false;
  int tier = 0;  // 0 = integral, else the field prime
  bool zero_conn = false;
};
Report run_complex_cmd(const ComplexRequest& req);

struct ModuleRequest {
  std::string builtin;
  int max_n = 4;
  bool polydeg = false;
  int floor_d = -1;
  bool csd = false;
  bool homology = false;  // central stability homology at every rank
  int tier = 0;
};
Report run_module_cmd(const ModuleRequest& req);

// Nonempty/connected status of the symplectic partial basis complex computed
// from vertex pairings only (no level-1 enumeration).
struct SpbConnectivity {
  long long vertices = 0;
  bool nonempty = false;
  bool connected = false;
};
SpbConnectivity spb_connectivity(const SymplecticSpace& sp);

// All subspaces of F_q^n (Howell forms) in deterministic order.
std::vector<Submodule> all_subspaces(const Ring& R, int n);

}  // namespace stabhom
