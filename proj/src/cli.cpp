#include "fdcolor/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fdcolor/documents.hpp"
#include "fdcolor/errors.hpp"
#include "fdcolor/insertion.hpp"
#include "fdcolor/pipeline.hpp"
#include "fdcolor/verifier.hpp"

namespace fdcolor {

namespace {

struct GraphSource {
  std::string gen;
  std::string edges;

  void attach(CLI::App* cmd) {
    auto* g = cmd->add_option("--gen", gen, "generator: path:N cycle:N torus:WxH regular:N:D tree:D:DEPTH");
    auto* e = cmd->add_option("--edges", edges, "edge-list file");
    g->excludes(e);
    e->excludes(g);
  }

  std::pair<Graph, std::string> load(std::uint64_t seed) const {
    if (!gen.empty()) return {generate(gen, seed), gen};
    if (!edges.empty()) return {read_edge_list_file(edges), "edges:" + edges};
    throw InputError("exactly one of --gen or --edges is required");
  }
};

std::uint64_t parse_seed(const std::string& text, const char* what) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-') {
    throw InputError(std::string("invalid ") + what + " '" + text + "'");
  }
  return value;
}

std::uint64_t resolve_seed(const std::optional<std::string>& flag) {
  if (flag) return parse_seed(*flag, "--seed");
  if (const char* env = std::getenv("FDCOLOR_SEED"); env && *env) return parse_seed(env, "FDCOLOR_SEED");
  return 0;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw InputError("failed writing '" + path + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finitely dependent proper colorings: sampling and dependence checks", "fdcolor"};
  app.require_subcommand(1);

  std::optional<std::string> seed_flag;
  std::string out_path;
  std::string variant_name = "fiid";

  auto* sample = app.add_subcommand("sample", "sample one coloring");
  GraphSource sample_src;
  sample_src.attach(sample);
  sample->add_option("--variant", variant_name, "invariant or fiid")->capture_default_str();
  sample->add_option("--seed", seed_flag, "master seed (default: $FDCOLOR_SEED, else 0)");
  sample->add_option("--out", out_path, "write the document here");

  auto* verify = app.add_subcommand("verify", "check k-dependence exactly or by Monte Carlo");
  GraphSource verify_src;
  verify_src.attach(verify);
  std::size_t k = 0;
  std::size_t trials = 10000;
  std::size_t jobs = 1;
  std::size_t window = 2;
  bool force_exact = false;
  bool force_mc = false;
  ExactCaps caps;
  McOptions mc;
  verify->add_option("--variant", variant_name, "invariant or fiid")->capture_default_str();
  verify->add_option("--k", k, "dependence range")->required();
  verify->add_option("--seed", seed_flag, "master seed (default: $FDCOLOR_SEED, else 0)");
  auto* exact_flag = verify->add_flag("--exact", force_exact, "exact oracle only");
  auto* mc_flag = verify->add_flag("--mc", force_mc, "Monte Carlo only");
  exact_flag->excludes(mc_flag);
  mc_flag->excludes(exact_flag);
  verify->add_option("--trials", trials, "Monte Carlo samples")->capture_default_str();
  verify->add_option("--jobs", jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--window", window, "largest exact window")->capture_default_str()->check(CLI::Range(1, 2));
  verify->add_option("--pairs", mc.window_pairs, "Monte Carlo window pairs")->capture_default_str();
  verify->add_option("--bootstrap", mc.bootstrap, "bootstrap replicates")->capture_default_str();
  verify->add_option("--alpha", mc.alpha, "family-wise level")->capture_default_str();
  verify->add_option("--max-vertices", caps.max_vertices, "exact oracle vertex cap")->capture_default_str();
  verify->add_option("--max-edges", caps.max_edges, "exact oracle edge cap")->capture_default_str();
  verify->add_option("--out", out_path, "write the report here");

  auto* oracle = app.add_subcommand("oracle", "dump the exact law of a line coloring");
  std::string topology_name = "path";
  std::size_t n = 1;
  std::size_t q = 4;
  std::size_t cap = 9;
  oracle->add_option("--topology", topology_name, "path or cycle")
      ->capture_default_str()
      ->check(CLI::IsMember({"path", "cycle"}));
  oracle->add_option("--n", n, "length")->required();
  oracle->add_option("--q", q, "palette size (3 or 4)")->capture_default_str();
  oracle->add_option("--cap", cap, "largest length")->capture_default_str();
  oracle->add_option("--out", out_path, "write the dump here");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "fdcolor: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*sample) {
      const auto seed = resolve_seed(seed_flag);
      const auto variant = parse_variant(variant_name);
      const auto [g, descriptor] = sample_src.load(seed);
      const VertexRandomness rnd(seed);
      const auto plan = sample_plan(g, variant, rnd);
      const auto colors = color_plan(plan, rnd);
      if (!check_properness(g, colors)) throw InvariantBreach("sampled coloring is not proper");
      emit(render(coloring_document(g, descriptor, seed, plan, colors)), out_path, out);
      return kExitPass;
    }
    if (*verify) {
      const auto seed = resolve_seed(seed_flag);
      const auto variant = parse_variant(variant_name);
      const auto [g, descriptor] = verify_src.load(seed);
      const bool within_caps = g.vertex_count() <= caps.max_vertices && g.edge_count() <= caps.max_edges;
      DependenceReport report;
      std::optional<std::size_t> smallest;
      if (force_exact || (!force_mc && within_caps)) {
        const auto joint = exact_pipeline_distribution(g, variant, caps);
        report = check_k_dependence_exact(joint, k, window);
        smallest = smallest_passing_k(joint, window);
      } else {
        mc.jobs = jobs;
        report = check_k_dependence_mc(g, variant, k, trials, VertexRandomness(seed), mc);
      }
      report.seed = seed;
      report.graph = descriptor;
      for (const auto& w : report.warnings) err << "fdcolor: warning: " << w << "\n";
      emit(render(report_document(report, smallest)), out_path, out);
      return report.pass ? kExitPass : kExitFail;
    }
    if (*oracle) {
      const auto topology = topology_name == "cycle" ? Topology::kCycle : Topology::kPath;
      const auto dist = exact_line_distribution(topology, n, q, cap);
      std::ostringstream text;
      dist.write(text);
      emit(text.str(), out_path, out);
      return kExitPass;
    }
  } catch (const CapExceeded& e) {
    err << "fdcolor: cap exceeded: " << e.what() << "\n";
    if (*verify) err << "fdcolor: rerun with --mc for a Monte Carlo check\n";
    return kExitCap;
  } catch (const InputError& e) {
    err << "fdcolor: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantBreach& e) {
    err << "fdcolor: internal invariant failed: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitInput;
}

}  // namespace fdcolor
