#include "forestbd/report.hpp"

#include <iomanip>
#include <regex>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace forestbd {

using nlohmann::json;

namespace {

json varset_json(const VarSet& set) { return json(set); }

json cycle_json(const std::vector<NodeRef>& cycle) {
  json out = json::array();
  for (const NodeRef& node : cycle) {
    out.push_back({{"kind", node.kind == NodeKind::Variable ? "var" : "clause"}, {"id", node.id}});
  }
  return out;
}

template <typename T>
json optional_json(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

}  // namespace

json RunReport::to_json() const {
  json out;
  out["schema"] = kReportSchemaVersion;
  out["command"] = command;
  out["input_digest"] = optional_json(input_digest);
  out["parameters"] = {{"kind", optional_json(kind)}, {"k", optional_json(k)}, {"r", optional_json(r)}};
  out["verdict"] = verdict;
  out["backdoor"] = backdoor ? varset_json(*backdoor) : json(nullptr);
  if (witness) {
    json w = json::object();
    for (const auto& [v, value] : *witness) w[std::to_string(v)] = value;
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  out["model_count"] = model_count ? json(model_count->str()) : json(nullptr);
  if (optimum || witness_sets) out["optimum"] = optional_json(optimum);
  if (witness_sets) {
    json sets = json::array();
    for (const VarSet& s : *witness_sets) sets.push_back(varset_json(s));
    out["witness_sets"] = std::move(sets);
  }

  json stats = {{"n", statistics.n},
                {"m", statistics.m},
                {"length", statistics.length},
                {"max_width", statistics.max_width}};
  if (statistics.acyclic) stats["acyclic"] = *statistics.acyclic;
  if (statistics.shortest_cycle) stats["shortest_cycle"] = cycle_json(*statistics.shortest_cycle);
  if (statistics.dichotomy) {
    const DichotomySummary& d = *statistics.dichotomy;
    json dj = {{"k_prime", d.k_prime}, {"outcome", d.found_cycles ? "cycles" : "fvs"}, {"size", d.size}};
    if (d.found_cycles) {
      json cycles = json::array();
      for (const auto& c : d.cycles) cycles.push_back(cycle_json(c));
      dj["cycles"] = std::move(cycles);
    }
    stats["dichotomy"] = std::move(dj);
  }
  out["statistics"] = std::move(stats);
  if (wall_time_ms) out["wall_time_ms"] = *wall_time_ms;
  return out;
}

RunStatistics formula_statistics(const Formula& f) {
  RunStatistics s;
  s.n = f.num_vars();
  s.m = f.num_clauses();
  s.length = f.length();
  s.max_width = max_clause_width(f);
  return s;
}

std::vector<NodeRef> describe_cycle(const SignedIncidenceGraph& g, const Cycle& cycle) {
  std::vector<NodeRef> out;
  out.reserve(cycle.size());
  for (int node : cycle) out.push_back(g.ref(node));
  return out;
}

DichotomySummary summarize_dichotomy(const Formula& f, int k_prime) {
  SignedIncidenceGraph g = build_incidence(f);
  PackingOrFvs split = disjoint_cycles_or_fvs(g.graph(), k_prime);
  DichotomySummary d;
  d.k_prime = k_prime;
  if (auto* packing = std::get_if<CyclePacking>(&split)) {
    d.found_cycles = true;
    d.size = packing->cycles.size();
    for (const Cycle& c : packing->cycles) d.cycles.push_back(describe_cycle(g, c));
  } else {
    d.size = std::get<FeedbackVertexSet>(split).nodes.size();
  }
  return d;
}

std::string input_digest(std::string_view text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr);
  std::ostringstream out;
  out << "sha256:";
  for (unsigned int i = 0; i < length; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return out.str();
}

namespace {

class Checker {
 public:
  void require(bool ok, const std::string& message) {
    if (!ok) problems.push_back(message);
  }

  bool nonneg_int(const json& v) { return v.is_number_integer() && v.get<long long>() >= 0; }

  void varset(const json& v, const std::string& where) {
    if (!v.is_array()) {
      problems.push_back(where + " must be an array");
      return;
    }
    std::set<long long> seen;
    for (const json& x : v) {
      if (!x.is_number_integer() || x.get<long long>() < 1) {
        problems.push_back(where + " must hold variable ids >= 1");
      } else if (!seen.insert(x.get<long long>()).second) {
        problems.push_back(where + " has duplicate ids");
      }
    }
  }

  void cycle(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() < 4) {
      problems.push_back(where + " must be an array of at least 4 nodes");
      return;
    }
    for (const json& node : v) {
      bool ok = node.is_object() && node.size() == 2 && node.contains("kind") &&
                node.contains("id") && node["kind"].is_string() &&
                (node["kind"] == "var" || node["kind"] == "clause") && nonneg_int(node["id"]);
      require(ok, where + " has a malformed node");
    }
  }

  void nullable(const json& v, bool (Checker::*check)(const json&), const std::string& where) {
    require(v.is_null() || (this->*check)(v), where + " has the wrong type");
  }

  std::vector<std::string> problems;
};

}  // namespace

std::vector<std::string> validate_report(const json& report) {
  Checker c;
  if (!report.is_object()) return {"report must be an object"};
  static const std::set<std::string> known = {
      "schema",       "command",    "input_digest", "parameters",   "verdict", "backdoor",
      "witness",      "model_count", "optimum",     "witness_sets", "statistics", "wall_time_ms"};
  for (const char* key : {"schema", "command", "input_digest", "parameters", "verdict", "backdoor",
                          "witness", "model_count", "statistics"}) {
    if (!report.contains(key)) c.problems.push_back(std::string("missing field ") + key);
  }
  for (const auto& [key, _] : report.items()) {
    c.require(known.contains(key), "unknown field " + key);
  }
  if (!c.problems.empty()) return c.problems;

  c.require(report["schema"] == kReportSchemaVersion, "schema must be 1");
  static const std::set<std::string> commands = {"detect", "count", "verify", "oracle", "stats"};
  c.require(report["command"].is_string() && commands.contains(report["command"].get<std::string>()),
            "unknown command");
  const json& digest = report["input_digest"];
  static const std::regex digest_re("^sha256:[0-9a-f]{64}$");
  c.require(digest.is_null() ||
                (digest.is_string() && std::regex_match(digest.get<std::string>(), digest_re)),
            "input_digest must be null or sha256:<64 hex>");

  const json& params = report["parameters"];
  if (!params.is_object() || params.size() != 3 || !params.contains("kind") ||
      !params.contains("k") || !params.contains("r")) {
    c.problems.push_back("parameters must have exactly kind, k, r");
  } else {
    static const std::set<std::string> kinds = {"weak", "strong", "deletion", "count"};
    c.require(params["kind"].is_null() ||
                  (params["kind"].is_string() && kinds.contains(params["kind"].get<std::string>())),
              "parameters.kind invalid");
    c.nullable(params["k"], &Checker::nonneg_int, "parameters.k");
    c.nullable(params["r"], &Checker::nonneg_int, "parameters.r");
  }

  static const std::set<std::string> verdicts = {"found", "no", "true", "false", "count", "ok"};
  c.require(report["verdict"].is_string() && verdicts.contains(report["verdict"].get<std::string>()),
            "unknown verdict");
  if (!report["backdoor"].is_null()) c.varset(report["backdoor"], "backdoor");
  const json& witness = report["witness"];
  if (!witness.is_null()) {
    static const std::regex id_re("^[1-9][0-9]*$");
    if (!witness.is_object()) {
      c.problems.push_back("witness must be null or an object");
    } else {
      for (const auto& [key, value] : witness.items()) {
        c.require(std::regex_match(key, id_re) && value.is_boolean(), "witness entry " + key);
      }
    }
  }
  const json& count = report["model_count"];
  static const std::regex count_re("^(0|[1-9][0-9]*)$");
  c.require(count.is_null() || (count.is_string() && std::regex_match(count.get<std::string>(), count_re)),
            "model_count must be null or a decimal string");
  if (report.contains("optimum")) c.nullable(report["optimum"], &Checker::nonneg_int, "optimum");
  if (report.contains("witness_sets")) {
    const json& sets = report["witness_sets"];
    if (!sets.is_array()) {
      c.problems.push_back("witness_sets must be an array");
    } else {
      for (const json& s : sets) c.varset(s, "witness_sets[]");
    }
  }

  const json& stats = report["statistics"];
  if (!stats.is_object()) {
    c.problems.push_back("statistics must be an object");
  } else {
    static const std::set<std::string> stat_keys = {"n",       "m",              "length", "max_width",
                                                    "acyclic", "shortest_cycle", "dichotomy"};
    for (const char* key : {"n", "m", "length", "max_width"}) {
      c.require(stats.contains(key) && c.nonneg_int(stats[key]), std::string("statistics.") + key);
    }
    for (const auto& [key, _] : stats.items()) {
      c.require(stat_keys.contains(key), "unknown statistics field " + key);
    }
    if (stats.contains("acyclic")) c.require(stats["acyclic"].is_boolean(), "statistics.acyclic");
    if (stats.contains("shortest_cycle")) c.cycle(stats["shortest_cycle"], "statistics.shortest_cycle");
    if (stats.contains("dichotomy")) {
      const json& d = stats["dichotomy"];
      bool ok = d.is_object() && d.contains("k_prime") && d.contains("outcome") && d.contains("size") &&
                d["k_prime"].is_number_integer() && d["k_prime"].get<long long>() >= 1 &&
                (d["outcome"] == "cycles" || d["outcome"] == "fvs") && c.nonneg_int(d["size"]);
      c.require(ok, "statistics.dichotomy malformed");
      if (ok) {
        for (const auto& [key, _] : d.items()) {
          c.require(key == "k_prime" || key == "outcome" || key == "size" || key == "cycles",
                    "unknown dichotomy field " + key);
        }
        if (d.contains("cycles")) {
          if (!d["cycles"].is_array()) {
            c.problems.push_back("statistics.dichotomy.cycles must be an array");
          } else {
            for (const json& cyc : d["cycles"]) c.cycle(cyc, "statistics.dichotomy.cycles[]");
          }
        }
      }
    }
  }
  if (report.contains("wall_time_ms")) {
    c.require(report["wall_time_ms"].is_number() && report["wall_time_ms"].get<double>() >= 0,
              "wall_time_ms must be a non-negative number");
  }
  return c.problems;
}

}  // namespace forestbd
