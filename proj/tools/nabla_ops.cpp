// Batch driver: runs named verification suites over a chosen group operad and
// truncation level, and exports materialized wreath categories as DOT.
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage or
// parse/configuration error.
#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "nabla/congruence.hpp"
#include "nabla/io.hpp"
#include "nabla/multicat.hpp"
#include "nabla/operad.hpp"
#include "nabla/quotal.hpp"
#include "nabla/segal.hpp"
#include "nabla/wreath.hpp"

using namespace nabla;

namespace {

std::vector<Perm> sorted(std::vector<Perm> v) {
  std::sort(v.begin(), v.end());
  return v;
}

LoadedMulticat load_sample(const std::string& path, int n_max) {
  if (path.empty())
    throw std::runtime_error("this suite needs --multicat <file>");
  return load_multicat(path, n_max);
}

Report suite_stabilizer(const GroupOperad& op, int n_max) {
  Report r{"stabilizer"};
  int total = 0, bad = 0;
  for (int m = 0; m <= n_max; ++m)
    for (int n = 0; n <= n_max; ++n)
      for (const auto& phi : enumerate_interval_maps(m, n)) {
        ++total;
        if (sorted(right_stabilizer_elements(op, phi)) !=
            sorted(rstab_oracle(op, phi, phi.dom_n + 1)))
          ++bad;
      }
  r.add("stabilizer-criterion", bad == 0,
        std::to_string(total) + " maps, " + std::to_string(bad) + " disagreements");
  return r;
}

Report suite_families(const GroupOperad& op, int n_max) {
  Report r{"families"};
  for (const char* slug : {"trivial", "rstab", "block", "block-kernel",
                           "block-closure", "block-kernel-closure", "min-proper"})
    r.merge(verify_family(builtin_family(op, slug), n_max));
  return r;
}

Report suite_quotal(const GroupOperad& op, int n_max) {
  Report r{"quotal"};
  for (const char* slug : {"trivial", "min-proper", "block-closure",
                           "block-kernel-closure", "rstab"}) {
    CongruenceFamily K = builtin_family(op, slug);
    QuotalCategory Q = build_quotal(op, K, n_max);
    bool ok = true;
    std::string witness;
    for (int m = 0; m <= n_max && ok; ++m)
      for (int n = 0; n <= n_max && ok; ++n)
        for (const auto& phi : enumerate_interval_maps(m, n))
          if (sorted(recover_family(Q, phi)) != sorted(K.members(phi))) {
            ok = false;
            witness = "at " + to_string(phi);
            break;
          }
    r.add(std::string("recover-") + slug, ok, witness);
  }
  return r;
}

Report suite_double(const GroupOperad& op, int n_max) {
  CongruenceFamily K = closure_family(block_family(op));
  CongruenceFamily L = closure_family(block_kernel_family(op));
  Report r = verify_pair(K, L, n_max);
  DoubleQuotal D = build_double_quotal(op, K, L, n_max);
  r.merge(check_double_category(D.dc));
  TildeDouble T = build_tilde_double(D);
  r.merge(check_double_category(T.dc));
  r.merge(verify_pullback_squares(D, T));
  return r;
}

Report suite_pairing(const GroupOperad& op, int n_max, const std::string& path) {
  LoadedMulticat L = load_sample(path, n_max);
  auto base = make_standard_base(op, n_max);
  Report r = check_pairing(pair_wreaths(L.cat, op, base, false), "coset");
  r.merge(check_pairing(pair_wreaths(L.cat, op, base, true), "tilde"));
  return r;
}

Report suite_operator(const GroupOperad& op, int n_max, const std::string& path) {
  LoadedMulticat L = load_sample(path, n_max);
  GSymAction act = L.has_symmetry ? L.action : fixing_action();
  auto base = make_standard_base(op, n_max);
  WreathOperator WO = wreath_operator(L.cat, act, base);
  Report r = validate_operator_category(WO.candidate);
  r.merge(check_fiber_decomposition(*WO.wreath, "fiber"));
  return r;
}

Report suite_roundtrip(const GroupOperad& op, int n_max, const std::string& path) {
  LoadedMulticat L = load_sample(path, n_max);
  GSymAction act = L.has_symmetry ? L.action : fixing_action();
  return roundtrip(L.cat, act, op, n_max);
}

Report suite_segal(int n_max, const std::string& path) {
  if (path.empty())
    throw std::runtime_error("this suite needs --monoid <file>");
  FinMonoid M = load_monoid(path);
  return commutativity_check(M, n_max).report;
}

int run_verify(const std::string& suite, const std::string& operad_name,
               int n_max, const std::string& multicat_path,
               const std::string& monoid_path) {
  Report r;
  if (suite == "segal") {
    r = suite_segal(n_max, monoid_path);
  } else {
    std::unique_ptr<GroupOperad> op =
        make_operad(operad_name, std::max(8, 4 * n_max));
    if (suite == "crossed")
      r = verify_operad_axioms(*op, n_max);
    else if (suite == "stabilizer")
      r = suite_stabilizer(*op, n_max);
    else if (suite == "families")
      r = suite_families(*op, n_max);
    else if (suite == "quotal")
      r = suite_quotal(*op, n_max);
    else if (suite == "double")
      r = suite_double(*op, n_max);
    else if (suite == "pairing")
      r = suite_pairing(*op, n_max, multicat_path);
    else if (suite == "operator")
      r = suite_operator(*op, n_max, multicat_path);
    else if (suite == "roundtrip")
      r = suite_roundtrip(*op, n_max, multicat_path);
    else
      throw std::runtime_error(
          "unknown suite '" + suite +
          "' (expected crossed|stabilizer|families|quotal|double|pairing|"
          "operator|roundtrip|segal)");
  }
  return print_report(r, std::cout) ? 0 : 1;
}

int run_build_wreath(const std::string& multicat_path,
                     const std::string& operad_name,
                     const std::string& variant_name, int n_max,
                     const std::string& dot_path) {
  LoadedMulticat L = load_sample(multicat_path, n_max);
  std::unique_ptr<GroupOperad> op =
      make_operad(operad_name, std::max(8, 4 * n_max));
  auto base = make_standard_base(*op, n_max);
  WreathVariant v = variant_name == "E"        ? WreathVariant::Base
                    : variant_name == "tildeE" ? WreathVariant::TildeBase
                    : variant_name == "G"      ? WreathVariant::Cells
                                               : WreathVariant::TildeCells;
  WreathCategory W(L.cat, base, v);
  WreathCategory::Materialized mat = W.materialize();
  std::ofstream out(dot_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + dot_path + "' for writing");
  write_dot(*mat.cat, out);
  out.flush();
  if (!out.good()) throw std::runtime_error("write to '" + dot_path + "' failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite verification suites for interval-indexed wreath categories"};
  app.require_subcommand(1);

  std::string suite, operad_name = "symmetric", multicat_path, monoid_path;
  int n_max = 2;
  CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("suite", suite, "suite name")->required();
  verify->add_option("--operad", operad_name, "group operad (trivial|symmetric)");
  verify->add_option("--n-max", n_max, "truncation level")
      ->required()
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--multicat", multicat_path, "multicategory definition file");
  verify->add_option("--monoid", monoid_path, "monoid definition file");

  std::string w_multicat, w_operad = "symmetric", w_variant, w_dot;
  int w_n_max = 2;
  CLI::App* build = app.add_subcommand("build", "construct and export a category");
  build->require_subcommand(1);
  CLI::App* wreath =
      build->add_subcommand("wreath", "materialize a wreath category as DOT");
  wreath->add_option("--multicat", w_multicat, "multicategory definition file")
      ->required();
  wreath->add_option("--operad", w_operad, "group operad (trivial|symmetric)");
  wreath->add_option("--variant", w_variant, "anchor variant")
      ->required()
      ->check(CLI::IsMember({"E", "tildeE", "G", "tildeG"}));
  wreath->add_option("--n-max", w_n_max, "truncation level")
      ->required()
      ->check(CLI::NonNegativeNumber);
  wreath->add_option("--dot", w_dot, "output DOT file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed())
      return run_verify(suite, operad_name, n_max, multicat_path, monoid_path);
    if (wreath->parsed())
      return run_build_wreath(w_multicat, w_operad, w_variant, w_n_max, w_dot);
  } catch (const std::exception& e) {
    std::cerr << "nabla-ops: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
