#include "forestbd/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "forestbd/acyclic.hpp"
#include "forestbd/backdoor.hpp"
#include "forestbd/errors.hpp"
#include "forestbd/generators.hpp"
#include "forestbd/oracle.hpp"
#include "forestbd/report.hpp"
#include "forestbd/strong.hpp"
#include "forestbd/weak.hpp"

namespace forestbd {

namespace {

struct CommonFlags {
  bool json = false;
  int threads = 1;
  bool no_timing = false;
};

struct Input {
  Formula formula;
  std::string digest;
};

Input load_cnf(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  const std::string text = buffer.str();
  return {parse_dimacs(text), input_digest(text)};
}

int parse_positive(std::string_view text, const char* what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1) {
    throw ParseError(std::string("invalid ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<int> parse_list(std::string_view text, char sep = ',') {
  std::vector<int> out;
  if (text.find_first_not_of(' ') == std::string_view::npos) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.find(sep, start);
    out.push_back(parse_positive(text.substr(start, end - start), "variable id"));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::vector<std::vector<int>> parse_family(std::string_view text) {
  std::vector<std::vector<int>> family;
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.find(';', start);
    family.push_back(parse_list(text.substr(start, end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return family;
}

int default_threads() {
  const char* env = std::getenv("FB_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  return parse_positive(env, "FB_THREADS value");
}

std::string join(const VarSet& set) {
  std::string s;
  for (Var v : set) s += (s.empty() ? "" : " ") + std::to_string(v);
  return s.empty() ? "(empty)" : s;
}

void print_text(const RunReport& report, std::ostream& out) {
  out << "verdict: " << report.verdict << '\n';
  if (report.backdoor) out << "backdoor: " << join(*report.backdoor) << '\n';
  if (report.witness) {
    out << "witness:";
    if (report.witness->empty()) out << " (empty)";
    for (const auto& [v, value] : *report.witness) out << ' ' << (value ? v : -v);
    out << '\n';
  }
  if (report.model_count) out << "model_count: " << report.model_count->str() << '\n';
  if (report.optimum) out << "optimum: " << *report.optimum << '\n';
  if (report.witness_sets) {
    for (const VarSet& s : *report.witness_sets) out << "optimal_set: " << join(s) << '\n';
  }
  const RunStatistics& st = report.statistics;
  out << "n: " << st.n << "  m: " << st.m << "  length: " << st.length
      << "  max_width: " << st.max_width << '\n';
  if (st.acyclic) out << "acyclic: " << (*st.acyclic ? "yes" : "no") << '\n';
  if (st.shortest_cycle) out << "shortest_cycle_length: " << st.shortest_cycle->size() << '\n';
  if (st.dichotomy) {
    out << "dichotomy(k'=" << st.dichotomy->k_prime << "): "
        << (st.dichotomy->found_cycles ? "cycles " : "fvs ") << st.dichotomy->size << '\n';
  }
  if (report.wall_time_ms) out << "wall_time_ms: " << *report.wall_time_ms << '\n';
}

/// Fills in wall time unless disabled and prints the report.
int emit(RunReport& report, const CommonFlags& flags, std::ostream& out,
         std::chrono::steady_clock::time_point start, int code) {
  if (!flags.no_timing) {
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  if (flags.json) {
    out << report.to_json().dump(2) << '\n';
  } else {
    print_text(report, out);
  }
  return code;
}

RunReport base_report(const std::string& command, const Input& input) {
  RunReport report;
  report.command = command;
  report.input_digest = input.digest;
  report.statistics = formula_statistics(input.formula);
  report.statistics.acyclic = is_acyclic(build_incidence(input.formula).graph());
  return report;
}

int dichotomy_k_prime(BackdoorKind kind, int k) {
  switch (kind) {
    case BackdoorKind::Weak:
      return 2 * k + 1;
    case BackdoorKind::Strong:
      return static_cast<int>(strong_params(k).cycles);
    case BackdoorKind::Deletion:
      return k + 1;
  }
  return k + 1;
}

void fill_verdict(RunReport& report, const BackdoorVerdict& verdict) {
  if (const auto* found = std::get_if<Found>(&verdict)) {
    report.verdict = "found";
    report.backdoor = found->set;
    report.witness = found->witness;
  } else {
    report.verdict = "no";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forest backdoor detection and model counting for CNF formulas", "forestbd"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonFlags flags;
  app.add_flag("--json", flags.json, "Emit a JSON run report on standard output");
  app.add_flag("--no-timing", flags.no_timing, "Omit wall time from reports");
  std::optional<int> threads;
  app.add_option("--threads", threads, "Worker threads (default: FB_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  std::string cnf_path;
  int k = 0;
  std::optional<int> r;
  std::string kind_name;
  std::string set_text;
  std::optional<std::string> backdoor_text;
  int k_max = 3;
  int k_prime = 2;

  auto* detect = app.add_subcommand("detect", "Detect a backdoor set of size <= k");
  detect->add_option("kind", kind_name, "weak, strong or deletion")
      ->required()
      ->check(CLI::IsMember({"weak", "strong", "deletion"}));
  detect->add_option("--cnf", cnf_path, "DIMACS input file")->required();
  detect->add_option("-k", k, "Backdoor size budget")->required()->check(CLI::NonNegativeNumber);
  detect->add_option("-r", r, "Clause width bound for weak detection (default: max width)")
      ->check(CLI::PositiveNumber);

  auto* count = app.add_subcommand("count", "Count models through a strong backdoor");
  count->add_option("--cnf", cnf_path, "DIMACS input file")->required();
  count->add_option("--backdoor", backdoor_text, "Comma separated strong backdoor");

  auto* verify = app.add_subcommand("verify", "Check whether a set is a backdoor");
  verify->add_option("--cnf", cnf_path, "DIMACS input file")->required();
  verify->add_option("--kind", kind_name, "weak, strong or deletion")
      ->required()
      ->check(CLI::IsMember({"weak", "strong", "deletion"}));
  verify->add_option("--set", set_text, "Comma separated variable ids")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force ground truth");
  oracle_cmd->add_option("--cnf", cnf_path, "DIMACS input file")->required();
  oracle_cmd->add_option("--kind", kind_name, "weak, strong, deletion or count")
      ->required()
      ->check(CLI::IsMember({"weak", "strong", "deletion", "count"}));
  oracle_cmd->add_option("--kmax", k_max, "Largest backdoor size searched")
      ->check(CLI::NonNegativeNumber);

  auto* stats = app.add_subcommand("stats", "Formula statistics and cycle structure");
  stats->add_option("--cnf", cnf_path, "DIMACS input file")->required();
  stats->add_option("--kprime", k_prime, "Cycle count for the packing/FVS dichotomy")
      ->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen", "Generate instances in DIMACS format");
  gen->require_subcommand(1);
  std::optional<std::string> out_path;
  gen->add_option("--out", out_path, "Output file (default: standard output)");
  int grid_r = 2;
  auto* gen_grid_cmd = gen->add_subcommand("grid", "Grid instance with a size-1 strong backdoor");
  gen_grid_cmd->add_option("-r", grid_r, "Grid side length")->required();
  std::string sets_text;
  auto* gen_hit = gen->add_subcommand("hitting", "Hitting-set reduction instance");
  gen_hit->add_option("--sets", sets_text, "Sets separated by ';', elements by ','")->required();
  int rn = 0, rm = 0, rr = 3;
  std::uint64_t seed = 0;
  auto* gen_rand = gen->add_subcommand("random", "Uniform random r-CNF");
  gen_rand->add_option("-n", rn, "Variables")->required();
  gen_rand->add_option("-m", rm, "Clauses")->required();
  gen_rand->add_option("-r", rr, "Clause width")->required();
  gen_rand->add_option("--seed", seed, "Random seed");

  std::vector<const char*> argv{"forestbd"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitFound : kExitUsage;
  }

  try {
    flags.threads = threads ? *threads : default_threads();
    DetectOptions options;
    options.threads = flags.threads;
    const auto start = std::chrono::steady_clock::now();

    if (*detect) {
      Input input = load_cnf(cnf_path);
      const BackdoorKind kind = parse_backdoor_kind(kind_name);
      RunReport report = base_report("detect", input);
      report.kind = kind_name;
      report.k = k;
      BackdoorVerdict verdict;
      switch (kind) {
        case BackdoorKind::Weak: {
          const int width = static_cast<int>(max_clause_width(input.formula));
          const int bound = r ? *r : std::max(width, 1);
          report.r = bound;
          verdict = detect_weak(input.formula, k, bound, options);
          break;
        }
        case BackdoorKind::Strong:
          verdict = detect_strong_approx(input.formula, k, options);
          break;
        case BackdoorKind::Deletion:
          verdict = detect_deletion(input.formula, k, options);
          break;
      }
      if (k >= 1) {
        report.statistics.dichotomy = summarize_dichotomy(input.formula, dichotomy_k_prime(kind, k));
      }
      fill_verdict(report, verdict);
      return emit(report, flags, out, start, is_found(verdict) ? kExitFound : kExitNo);
    }

    if (*count) {
      Input input = load_cnf(cnf_path);
      RunReport report = base_report("count", input);
      report.kind = "count";
      VarSet backdoor;
      if (backdoor_text) {
        backdoor = make_varset(parse_list(*backdoor_text));
      } else {
        bool found = false;
        for (int budget = 0; budget <= kMaxStrongBudget && !found; ++budget) {
          BackdoorVerdict verdict = detect_strong_approx(input.formula, budget, options);
          if (const auto* f = std::get_if<Found>(&verdict)) {
            backdoor = f->set;
            report.k = budget;
            found = true;
          }
        }
        if (!found) {
          throw ResourceGuardError("no strong backdoor found for k <= " +
                                   std::to_string(kMaxStrongBudget));
        }
      }
      ModelCount mc = count_via_backdoor(input.formula, backdoor, input.formula.universe());
      report.verdict = "count";
      report.backdoor = backdoor;
      report.model_count = mc.count;
      return emit(report, flags, out, start, kExitFound);
    }

    if (*verify) {
      Input input = load_cnf(cnf_path);
      const BackdoorKind kind = parse_backdoor_kind(kind_name);
      const VarSet set = make_varset(parse_list(set_text));
      RunReport report = base_report("verify", input);
      report.kind = kind_name;
      report.backdoor = set;
      bool ok = false;
      if (kind == BackdoorKind::Weak) {
        report.witness = is_weak_bds(input.formula, set);
        ok = report.witness.has_value();
      } else {
        ok = verify_backdoor(input.formula, kind, set);
      }
      report.verdict = ok ? "true" : "false";
      return emit(report, flags, out, start, ok ? kExitFound : kExitNo);
    }

    if (*oracle_cmd) {
      Input input = load_cnf(cnf_path);
      RunReport report = base_report("oracle", input);
      report.kind = kind_name;
      if (kind_name == "count") {
        report.verdict = "count";
        report.model_count = oracle::brute_count(input.formula);
        return emit(report, flags, out, start, kExitFound);
      }
      const BackdoorKind kind = parse_backdoor_kind(kind_name);
      report.k = k_max;
      oracle::Report result = oracle::brute_min_backdoor(input.formula, kind, k_max);
      report.optimum = result.optimum;
      report.witness_sets = result.witness_sets;
      if (result.optimum) {
        report.verdict = "found";
        report.backdoor = result.witness_sets.front();
        if (kind == BackdoorKind::Weak) report.witness = is_weak_bds(input.formula, *report.backdoor);
      } else {
        report.verdict = "no";
      }
      return emit(report, flags, out, start, result.optimum ? kExitFound : kExitNo);
    }

    if (*stats) {
      Input input = load_cnf(cnf_path);
      RunReport report = base_report("stats", input);
      report.verdict = "ok";
      SignedIncidenceGraph g = build_incidence(input.formula);
      if (auto cycle = find_cycle(g.graph(), NodeMask{})) {
        report.statistics.shortest_cycle = describe_cycle(g, *cycle);
      }
      report.statistics.dichotomy = summarize_dichotomy(input.formula, k_prime);
      return emit(report, flags, out, start, kExitFound);
    }

    if (*gen) {
      Formula f;
      if (*gen_grid_cmd) {
        f = gen_grid(grid_r);
      } else if (*gen_hit) {
        f = gen_hitting_set(parse_family(sets_text));
      } else {
        f = gen_random_rcnf(rn, rm, rr, seed);
      }
      const std::string text = emit_dimacs(f);
      if (out_path) {
        std::ofstream file(*out_path, std::ios::binary);
        if (!file) throw ParseError("cannot write '" + *out_path + "'");
        file << text;
      } else {
        out << text;
      }
      return kExitFound;
    }
  } catch (const ResourceGuardError& e) {
    err << "resource guard: " << e.what() << '\n';
    return kExitResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace forestbd
