// rcb: command-line front end for the rooted cycle basis library.
//
// Exit codes: 0 success, 1 a "no" answer, 2 bad input, 3 search limit hit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rcb/rcb.hpp"
#include "rcb/testkit.hpp"

namespace {

using namespace rcb;

constexpr int kOk = 0, kNo = 1, kBadInput = 2, kLimit = 3;

io::GraphFile load(const std::string& path) {
  if (path == "-") return io::read_graph(std::cin);
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return io::read_graph(in);
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("RCB_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw InvalidInput("RCB_SEED is not an unsigned integer");
    }
  }
  return 1;
}

int cmd_check(const std::string& file) {
  const auto gf = load(file);
  const ExistenceReport r = has_rooted_cycle_basis(gf.rooted);
  if (r.exists) {
    std::cout << "rooted basis: yes\n";
    return kOk;
  }
  std::cout << "rooted basis: no (" << to_string(r.failure) << ", witness " << r.witness << ")\n";
  std::cerr << r.message << '\n';
  return kNo;
}

int emit_basis(const RootedGraph& rg, const CycleBasis& b) {
  const ValidationReport v = validate_rooted_basis(rg, b);
  io::write_basis(std::cout, b, v.rank, v.dimension);
  return kOk;
}

int cmd_basis(const std::string& file) {
  const auto gf = load(file);
  return emit_basis(gf.rooted, build_rooted_cycle_basis(gf.rooted));
}

int cmd_minbasis(const std::string& file, const std::string& tiebreak, std::uint64_t seed, bool assert_ears) {
  const auto gf = load(file);
  MinBasisOptions opt;
  opt.seed = seed;
  opt.assert_ears = assert_ears;
  if (tiebreak == "det") {
    opt.tiebreak = TieBreakPolicy::deterministic;
  } else if (tiebreak == "rand") {
    opt.tiebreak = TieBreakPolicy::randomized;
  } else {
    throw InvalidInput("--tiebreak must be det or rand");
  }
  const MinBasisResult r = min_weight_rooted_basis(gf.rooted, opt);
  if (opt.tiebreak == TieBreakPolicy::randomized) std::cerr << "seed=" << r.seed << " attempts=" << r.attempts << '\n';
  io::write_basis(std::cout, r.basis, r.rank, r.dimension);
  return kOk;
}

int cmd_fundamental(const std::string& file, const std::string& method, std::uint64_t limit) {
  const auto gf = load(file);
  std::optional<std::vector<EdgeId>> tree;
  if (method == "partition") {
    SearchLimits lim;
    lim.max_nodes = limit;
    if (auto t = find_fundamental_rooted_tree(gf.rooted, lim)) tree = t->tree;
  } else if (method == "brute") {
    if (gf.rooted.graph().vertex_count() > 12) throw InvalidInput("brute method is limited to 12 vertices");
    tree = testkit::brute_fundamental_search(gf.rooted, limit);
  } else {
    throw InvalidInput("--method must be partition or brute");
  }
  if (!tree) {
    std::cout << "fundamental rooted tree: none\n";
    return kNo;
  }
  io::write_tree(std::cout, *tree);
  return kOk;
}

int cmd_dual(const std::string& file) {
  const auto gf = load(file);
  if (!gf.embedding) throw InvalidInput("dual needs a rot: section");
  const PlaneEmbedding d = dual_graph(*gf.embedding);
  io::write_graph(std::cout, RootedGraph(d.graph, gf.rooted.root()), &d);
  return kOk;
}

int cmd_hamiltonian(const std::string& file, std::uint64_t limit) {
  const auto gf = load(file);
  SearchLimits lim;
  lim.max_nodes = limit;
  const auto cyc = find_rooted_hamiltonian(gf.rooted, lim);
  if (!cyc) {
    std::cout << "rooted hamiltonian: none\n";
    return kNo;
  }
  std::cout << "hamiltonian:";
  for (EdgeId e : *cyc) std::cout << ' ' << e;
  std::cout << '\n';
  return kOk;
}

int cmd_gen(const std::string& family, const std::vector<long long>& p) {
  auto need = [&](std::size_t k) {
    if (p.size() != k) throw InvalidInput(family + " takes " + std::to_string(k) + " parameters");
  };
  auto i = [&](std::size_t k) { return static_cast<int>(p[k]); };
  if (family == "ladder") {
    need(1);
    io::write_graph(std::cout, gen_ladder(i(0)));
  } else if (family == "cliques") {
    need(2);
    io::write_graph(std::cout, gen_cliques_with_paths(i(0), i(1)));
  } else if (family == "k33") {
    need(0);
    io::write_graph(std::cout, gen_k33_subdivision());
  } else if (family == "random") {
    need(4);
    RandomGraphOptions o;
    o.n = i(0);
    o.m = i(1);
    o.max_weight = p[2];
    io::write_graph(std::cout, gen_random_biconnected(o, static_cast<std::uint64_t>(p[3])));
  } else if (family == "wheel" || family == "prism" || family == "grid" || family == "k23") {
    PlaneInstance pi;
    if (family == "wheel") {
      need(1);
      pi = gen_wheel(i(0));
    } else if (family == "prism") {
      need(1);
      pi = gen_prism(i(0));
    } else if (family == "grid") {
      need(2);
      pi = gen_grid(i(0), i(1));
    } else {
      need(0);
      pi = gen_k23();
    }
    io::write_graph(std::cout, RootedGraph(pi.embedding.graph, 0), &pi.embedding);
  } else {
    throw InvalidInput("unknown family " + family + " (ladder, cliques, k33, random, wheel, prism, grid, k23)");
  }
  return kOk;
}

int cmd_verify(const std::string& graph_file, const std::string& result_file) {
  const auto gf = load(graph_file);
  std::ifstream in(result_file);
  if (!in) throw InvalidInput("cannot open " + result_file);
  const io::ResultFile r = io::read_result(in);
  if (r.tree) {
    const FundamentalCheck c = is_fundamental_rooted(gf.rooted, *r.tree);
    if (c) {
      std::cout << "valid fundamental rooted tree\n";
      return kOk;
    }
    std::cout << "invalid: edge " << c.offending << " has a fundamental cycle without the root\n";
    return kNo;
  }
  const ValidationReport v = validate_rooted_basis(gf.rooted, *r.basis);
  if (v.valid()) {
    std::cout << "valid rooted basis: cycles=" << r.basis->size() << " total_weight=" << r.basis->total_weight()
              << " rank=" << v.rank << " dim=" << v.dimension << '\n';
    return kOk;
  }
  for (const auto& e : v.entries) std::cout << "invalid: " << e.message << '\n';
  return kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rooted cycle bases"};
  app.require_subcommand(1);

  std::string file, result_file, tiebreak = "det", method = "partition", family;
  std::uint64_t seed = 0, limit = 50'000'000;
  bool assert_ears = false;
  std::vector<long long> params;

  auto* check = app.add_subcommand("check", "Does a rooted cycle basis exist?");
  check->add_option("graph", file, "graph file, - for stdin")->required();
  auto* basis = app.add_subcommand("basis", "Rooted cycle basis from an ear decomposition");
  basis->add_option("graph", file)->required();
  auto* minb = app.add_subcommand("minbasis", "Minimum-weight rooted cycle basis");
  minb->add_option("graph", file)->required();
  minb->add_option("--tiebreak", tiebreak, "det or rand")->check(CLI::IsMember({"det", "rand"}));
  auto* seed_opt = minb->add_option("--seed", seed, "seed for rand (default $RCB_SEED or 1)");
  minb->add_flag("--assert-ears", assert_ears, "check the ear structure at every step");
  auto* fund = app.add_subcommand("fundamental", "Fundamental rooted cycle basis search");
  fund->add_option("graph", file)->required();
  fund->add_option("--method", method, "partition or brute")->check(CLI::IsMember({"partition", "brute"}));
  fund->add_option("--limit", limit, "search node limit");
  auto* dual = app.add_subcommand("dual", "Dual of an embedded graph");
  dual->add_option("graph", file)->required();
  auto* ham = app.add_subcommand("hamiltonian", "Hamiltonian cycle through the root");
  ham->add_option("graph", file)->required();
  ham->add_option("--limit", limit, "search node limit");
  auto* gen = app.add_subcommand("gen", "Write a generated graph");
  gen->add_option("family", family)->required();
  gen->add_option("params", params);
  auto* verify = app.add_subcommand("verify", "Check a basis or tree file against a graph");
  verify->add_option("graph", file)->required();
  verify->add_option("result", result_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*check) return cmd_check(file);
    if (*basis) return cmd_basis(file);
    if (*minb) return cmd_minbasis(file, tiebreak, seed_opt->count() ? seed : default_seed(), assert_ears);
    if (*fund) return cmd_fundamental(file, method, limit);
    if (*dual) return cmd_dual(file);
    if (*ham) return cmd_hamiltonian(file, limit);
    if (*gen) return cmd_gen(family, params);
    if (*verify) return cmd_verify(file, result_file);
  } catch (const NoRootedBasis& e) {
    std::cerr << "no rooted basis: " << e.what() << '\n';
    return kNo;
  } catch (const NotASpanningTree& e) {
    std::cout << "invalid: " << e.what() << '\n';
    return kNo;
  } catch (const RootNotInTree& e) {
    std::cout << "invalid: " << e.what() << '\n';
    return kNo;
  } catch (const SearchLimitExceeded& e) {
    std::cerr << e.what() << '\n';
    return kLimit;
  } catch (const CapExceeded& e) {
    std::cerr << e.what() << '\n';
    return kLimit;
  } catch (const InvalidInput& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kBadInput;
  } catch (const InvalidEmbedding& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kBadInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
