#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "forestbd/acyclic.hpp"
#include "forestbd/formula.hpp"
#include "forestbd/graph.hpp"

namespace forestbd {

inline constexpr int kReportSchemaVersion = 1;

struct DichotomySummary {
  int k_prime = 0;
  bool found_cycles = false;
  std::size_t size = 0;  // number of cycles, or FVS size
  std::vector<std::vector<NodeRef>> cycles;
};

struct RunStatistics {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t length = 0;
  std::size_t max_width = 0;
  std::optional<bool> acyclic;
  std::optional<DichotomySummary> dichotomy;
  std::optional<std::vector<NodeRef>> shortest_cycle;
};

struct RunReport {
  std::string command;
  std::optional<std::string> input_digest;
  std::optional<std::string> kind;
  std::optional<int> k;
  std::optional<int> r;
  std::string verdict;
  std::optional<VarSet> backdoor;
  std::optional<Assignment> witness;
  std::optional<BigInt> model_count;
  std::optional<int> optimum;
  std::optional<std::vector<VarSet>> witness_sets;
  RunStatistics statistics;
  std::optional<double> wall_time_ms;

  nlohmann::json to_json() const;
};

RunStatistics formula_statistics(const Formula& f);
DichotomySummary summarize_dichotomy(const Formula& f, int k_prime);
std::vector<NodeRef> describe_cycle(const SignedIncidenceGraph& g, const Cycle& cycle);

/// "sha256:<hex>" digest of the raw input text.
std::string input_digest(std::string_view text);

/// Structural check of a report against schema/run_report.schema.json.
/// Returns the list of violations; empty means valid.
std::vector<std::string> validate_report(const nlohmann::json& report);

}  // namespace forestbd
