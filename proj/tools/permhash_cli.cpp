// permhash: command-line front end for the permutation hash, the classic
// ring and the universal-cycle tooling. Every command prints exactly one
// JSON (or CSV) document on stdout; diagnostics go to stderr.
//
// Exit codes: 0 success, 1 usage error, 2 domain error. Domain errors are
// reported on stderr as {"error": CODE, "detail": "..."}.

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "permhash/analysis.hpp"
#include "permhash/errors.hpp"
#include "permhash/hash_key.hpp"
#include "permhash/node_table.hpp"
#include "permhash/permcore.hpp"
#include "permhash/ring.hpp"
#include "permhash/ucycle.hpp"

namespace {

using permhash::Error;
using permhash::ErrorCode;
using Json = nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Write to a sibling temp file, then rename over the target.
void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << content << '\n';
    out.flush();
    if (!out) throw IoError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot replace '" + path + "': " + ec.message());
  }
}

void emit(const std::string& doc) {
  std::cout << doc;
  if (doc.empty() || doc.back() != '\n') std::cout << '\n';
}
void emit(const Json& doc) { emit(doc.dump()); }

struct KeyArgs {
  std::optional<std::string> bytes;
  std::optional<std::string> integer;
  std::optional<std::size_t> bits;

  void add_to(CLI::App* cmd) {
    auto* b = cmd->add_option("--key-bytes", bytes, "Key material, hashed with SHA-512");
    auto* i = cmd->add_option("--key-int", integer, "Key as a non-negative decimal integer");
    b->excludes(i);
    cmd->add_option("--key-bits", bits, "Key width in bits");
  }

  // default_int_bits: width for --key-int when --key-bits is absent
  // (0 means the integer's own bit length).
  permhash::HashKey resolve(std::size_t default_int_bits = 0) const {
    if (bytes) return permhash::derive_key(*bytes, bits.value_or(512));
    if (!integer) throw UsageError("one of --key-bytes or --key-int is required");
    permhash::BigUint value = permhash::BigUint::from_decimal(*integer);
    if (bits) return permhash::HashKey(std::move(value), *bits);
    if (default_int_bits != 0) return permhash::HashKey(std::move(value), default_int_bits);
    return permhash::HashKey::from_value(std::move(value));
  }
};

std::vector<permhash::NodeId> read_cycle_file(const std::string& path) {
  const std::string text = read_file(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError,
                "malformed JSON at byte " + std::to_string(e.byte) + " in '" + path + "'");
  }
  if (!doc.is_array()) throw Error(ErrorCode::kParseError, "cycle file must hold a JSON array");
  std::vector<permhash::NodeId> out;
  for (const auto& item : doc) {
    if (!item.is_string()) throw Error(ErrorCode::kParseError, "cycle entries must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

Json histogram_json(const std::map<permhash::NodeId, std::size_t>& histogram) {
  Json out = Json::object();
  for (const auto& [node, count] : histogram) out[node] = count;
  return out;
}

Json spread_json(const permhash::SpreadStats& s) {
  Json out;
  out["mean_min_ratio"] = s.mean_min_ratio;
  out["mean_min_stderr"] = s.mean_min_stderr;
  out["max_mean_ratio"] = s.max_mean_ratio;
  out["max_mean_stderr"] = s.max_mean_stderr;
  return out;
}

permhash::KeyRange key_range(bool exact, std::optional<std::uint64_t> samples, std::uint64_t seed) {
  if (exact && samples) throw UsageError("--exact and --sample are mutually exclusive");
  if (samples) return permhash::SampledRange{*samples, seed};
  return permhash::ExactRange{};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation-based consistent hashing toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string output = "json";
  app.add_option("--output", output, "Report format for analyze commands")
      ->check(CLI::IsMember({"json", "csv"}));
  unsigned workers = 0;
  app.add_option("--workers", workers, "Worker threads for analyses (0 = all cores)");

  std::string table_path;
  auto add_table_option = [&](CLI::App* cmd) {
    cmd->add_option("-t,--table", table_path, "Node table file")
        ->envname("PERMHASH_TABLE")
        ->required();
  };

  // table
  auto* table_cmd = app.add_subcommand("table", "Create and edit node tables");
  table_cmd->require_subcommand(1);
  std::string strategy_name = "from_start";
  std::vector<std::string> init_nodes;
  auto* table_init = table_cmd->add_subcommand("init", "Write a new table");
  add_table_option(table_init);
  table_init->add_option("--strategy", strategy_name, "from_start or from_end")
      ->check(CLI::IsMember({"from_start", "from_end"}));
  table_init->add_option("nodes", init_nodes, "Node labels in insertion order");
  std::string node_arg;
  auto* table_add = table_cmd->add_subcommand("add", "Add a node (fills the first free slot)");
  add_table_option(table_add);
  table_add->add_option("node", node_arg)->required();
  auto* table_remove = table_cmd->add_subcommand("remove", "Remove a node");
  add_table_option(table_remove);
  table_remove->add_option("node", node_arg)->required();
  auto* table_show = table_cmd->add_subcommand("show", "Print the table");
  add_table_option(table_show);

  // hash
  auto* hash_cmd = app.add_subcommand("hash", "Look up a key");
  add_table_option(hash_cmd);
  KeyArgs hash_key;
  hash_key.add_to(hash_cmd);
  bool full_permutation = false;
  bool strict_entropy = false;
  hash_cmd->add_flag("--full-permutation", full_permutation, "Print the whole node ordering");
  hash_cmd->add_flag("--strict-entropy", strict_entropy, "Fail when the key is too narrow");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Uniformity and remapping analyses");
  analyze_cmd->require_subcommand(1);
  bool exact = false;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  auto add_range_options = [&](CLI::App* cmd) {
    cmd->add_flag("--exact", exact, "Enumerate every key in [0, slots!)");
    cmd->add_option("--sample", samples, "Number of random keys");
    cmd->add_option("--seed", seed, "Sampling seed");
  };
  auto* census_cmd = analyze_cmd->add_subcommand("census", "First-position counts per node");
  add_table_option(census_cmd);
  add_range_options(census_cmd);
  std::string before_path, after_path;
  auto* remap_cmd = analyze_cmd->add_subcommand("remap", "Key movement between two tables");
  remap_cmd->add_option("--before", before_path)->required();
  remap_cmd->add_option("--after", after_path)->required();
  add_range_options(remap_cmd);
  std::uint64_t survival_n = 0, survival_m = 1;
  auto* survival_cmd =
      analyze_cmd->add_subcommand("survival", "Keys kept by key mod n when n grows by one");
  survival_cmd->add_option("--n", survival_n)->required()->check(CLI::PositiveNumber);
  survival_cmd->add_option("--m", survival_m)->check(CLI::PositiveNumber);

  // ring
  auto* ring_cmd = app.add_subcommand("ring", "Classic consistent-hash ring");
  ring_cmd->require_subcommand(1);
  std::string ring_path;
  auto add_ring_option = [&](CLI::App* cmd) {
    cmd->add_option("-r,--ring", ring_path, "Ring state file")->required();
  };
  unsigned point_bits = 32;
  std::size_t replicas = 1;
  auto* ring_init = ring_cmd->add_subcommand("init", "Write an empty ring");
  add_ring_option(ring_init);
  ring_init->add_option("--point-bits", point_bits)->check(CLI::IsMember({32, 64}));
  ring_init->add_option("--k", replicas, "Points per node")->check(CLI::PositiveNumber);
  auto* ring_add = ring_cmd->add_subcommand("add", "Add a node");
  add_ring_option(ring_add);
  ring_add->add_option("node", node_arg)->required();
  auto* ring_remove = ring_cmd->add_subcommand("remove", "Remove a node");
  add_ring_option(ring_remove);
  ring_remove->add_option("node", node_arg)->required();
  auto* ring_show = ring_cmd->add_subcommand("show", "Print the ring's points");
  add_ring_option(ring_show);
  auto* ring_lookup = ring_cmd->add_subcommand("lookup", "Owner of a key");
  add_ring_option(ring_lookup);
  KeyArgs ring_key;
  ring_key.add_to(ring_lookup);
  std::size_t stat_nodes = 10, stat_k = 1, stat_trials = 10000;
  std::uint64_t stat_seed = 0;
  std::string metric = "all";
  auto* ring_stats = ring_cmd->add_subcommand("stats", "Segment statistics of random rings");
  ring_stats->add_option("--nodes", stat_nodes)->check(CLI::PositiveNumber);
  ring_stats->add_option("--k", stat_k)->check(CLI::PositiveNumber);
  ring_stats->add_option("--trials", stat_trials);
  ring_stats->add_option("--seed", stat_seed);
  ring_stats->add_option("--metric", metric)->check(CLI::IsMember({"all", "median", "spread"}));

  // cycle
  auto* cycle_cmd = app.add_subcommand("cycle", "Universal cycles of shorthand permutations");
  cycle_cmd->require_subcommand(1);
  std::string cycle_path;
  std::vector<std::string> cycle_nodes;
  std::vector<std::string> removed;
  std::uint64_t budget = permhash::kDefaultCycleBudget;
  auto* cycle_build = cycle_cmd->add_subcommand("build", "Search for a cycle");
  cycle_build->add_option("nodes", cycle_nodes)->required();
  cycle_build->add_option("--budget", budget, "Node-expansion budget");
  std::vector<std::string> inline_symbols;
  auto add_cycle_input = [&](CLI::App* cmd) {
    auto* f = cmd->add_option("-f,--file", cycle_path, "Cycle file (JSON array of labels)");
    auto* s = cmd->add_option("symbols", inline_symbols, "Cycle given inline");
    f->excludes(s);
  };
  auto* cycle_verify = cycle_cmd->add_subcommand("verify", "Check a cycle");
  add_cycle_input(cycle_verify);
  cycle_verify->add_option("--nodes", cycle_nodes, "Node set (default: symbols in the cycle)");
  auto* cycle_remove = cycle_cmd->add_subcommand("remove-sim", "Substitute removed nodes");
  add_cycle_input(cycle_remove);
  cycle_remove->add_option("--remove", removed)->required();
  auto* cycle_lookup = cycle_cmd->add_subcommand("lookup", "Segment owner for a key");
  add_cycle_input(cycle_lookup);
  cycle_lookup->add_option("--remove", removed);
  KeyArgs cycle_key;
  cycle_key.add_to(cycle_lookup);

  // capacity
  auto* capacity_cmd = app.add_subcommand("capacity", "Key width versus node count");
  std::optional<std::size_t> cap_bits, cap_nodes;
  std::size_t cap_margin = 0;
  auto* bits_opt = capacity_cmd->add_option("--bits", cap_bits)->check(CLI::PositiveNumber);
  auto* nodes_opt = capacity_cmd->add_option("--nodes", cap_nodes)->check(CLI::PositiveNumber);
  bits_opt->excludes(nodes_opt);
  capacity_cmd->add_option("--margin", cap_margin)->needs(nodes_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const bool csv = output == "csv";
  try {
    if (csv && !analyze_cmd->parsed()) throw UsageError("--output csv applies to analyze only");

    auto load_table = [](const std::string& path) {
      return permhash::deserialize(read_file(path));
    };

    if (table_cmd->parsed()) {
      permhash::NodeTable table;
      if (table_init->parsed()) {
        table = permhash::NodeTable::create(init_nodes, permhash::parse_strategy(strategy_name));
      } else {
        table = load_table(table_path);
        if (table_add->parsed()) table = table.add(node_arg);
        if (table_remove->parsed()) table = table.remove(node_arg);
      }
      const std::string doc = permhash::serialize(table);
      if (!table_show->parsed()) write_file_atomic(table_path, doc);
      emit(doc);
    } else if (hash_cmd->parsed()) {
      const auto table = load_table(table_path);
      const auto key = hash_key.resolve();
      const auto check =
          strict_entropy ? permhash::EntropyCheck::kStrict : permhash::EntropyCheck::kWarn;
      permhash::set_entropy_warning_handler([](const std::string& message) {
        std::cerr << Json{{"warning", "ENTROPY_LOW"}, {"detail", message}}.dump() << '\n';
      });
      if (full_permutation) {
        emit(Json(permhash::permute(table, key, check)));
      } else {
        emit(Json(permhash::first_live(table, key, check)));
      }
    } else if (analyze_cmd->parsed()) {
      if (census_cmd->parsed()) {
        const auto report =
            permhash::census(load_table(table_path), key_range(exact, samples, seed), workers);
        emit(csv ? permhash::to_csv(report) : permhash::to_json(report));
      } else if (remap_cmd->parsed()) {
        const auto matrix = permhash::remap_matrix(load_table(before_path), load_table(after_path),
                                                   key_range(exact, samples, seed), workers);
        emit(csv ? permhash::to_csv(matrix) : permhash::to_json(matrix));
      } else {
        const auto report = permhash::simple_mod_survival(survival_n, survival_m);
        emit(csv ? permhash::to_csv(report) : permhash::to_json(report));
      }
    } else if (ring_cmd->parsed()) {
      if (ring_stats->parsed()) {
        Json doc;
        doc["kind"] = "ring_stats";
        doc["nodes"] = stat_nodes;
        doc["k"] = stat_k;
        doc["trials"] = stat_trials;
        doc["seed"] = stat_seed;
        if (metric != "spread") {
          const auto m =
              permhash::ring_median_mean(stat_nodes * stat_k, stat_trials, stat_seed, workers);
          doc["median_mean_ratio"] = m.pooled_ratio;
          doc["per_trial_median_mean_ratio"] = m.per_trial_ratio;
        }
        if (metric != "median") {
          doc["spread"] = spread_json(
              permhash::ring_spread_stats(stat_nodes, stat_k, stat_trials, stat_seed, workers));
        }
        emit(doc);
      } else if (ring_init->parsed()) {
        const permhash::RingState ring(permhash::RingConfig{point_bits, replicas});
        const std::string doc = permhash::serialize_ring(ring);
        write_file_atomic(ring_path, doc);
        emit(doc);
      } else {
        permhash::RingState ring = permhash::deserialize_ring(read_file(ring_path));
        if (ring_lookup->parsed()) {
          emit(Json(ring.lookup(ring_key.resolve(ring.config().point_bits))));
        } else if (ring_show->parsed()) {
          Json points = Json::array();
          for (const auto& [point, owner] : ring.points()) points.push_back({point, owner});
          Json doc = Json::parse(permhash::serialize_ring(ring));
          doc["points"] = std::move(points);
          emit(doc);
        } else {
          ring = ring_add->parsed() ? ring.add(node_arg) : ring.remove(node_arg);
          const std::string doc = permhash::serialize_ring(ring);
          write_file_atomic(ring_path, doc);
          emit(doc);
        }
      }
    } else if (cycle_cmd->parsed()) {
      if (cycle_build->parsed()) {
        emit(Json(permhash::build_cycle(cycle_nodes, budget)));
      } else {
        if (cycle_path.empty() && inline_symbols.empty()) {
          throw UsageError("a cycle is required (-f FILE or inline symbols)");
        }
        const auto symbols = cycle_path.empty() ? inline_symbols : read_cycle_file(cycle_path);
        if (cycle_verify->parsed()) {
          const auto nodes = cycle_nodes.empty() ? permhash::symbol_set(symbols) : cycle_nodes;
          const auto check = permhash::verify_cycle(symbols, nodes);
          Json doc;
          doc["valid"] = check.valid;
          if (!check.valid) {
            doc["first_violation"] =
                check.first_violation ? Json(*check.first_violation) : Json(nullptr);
            doc["reason"] = check.reason;
          }
          emit(doc);
        } else if (cycle_remove->parsed()) {
          const auto out = permhash::substitute_removed(symbols, removed);
          Json doc;
          doc["histogram"] = histogram_json(permhash::count_symbols(out));
          doc["symbols"] = out;
          emit(doc);
        } else {
          emit(Json(permhash::cycle_lookup(symbols, cycle_key.resolve().value(), removed)));
        }
      }
    } else if (capacity_cmd->parsed()) {
      if (cap_bits) {
        emit(Json{{"bits", *cap_bits}, {"max_nodes", permhash::capacity(*cap_bits)}});
      } else if (cap_nodes) {
        emit(Json{{"nodes", *cap_nodes},
                  {"margin", cap_margin},
                  {"min_bits", permhash::min_key_bits(*cap_nodes, cap_margin)}});
      } else {
        throw UsageError("one of --bits or --nodes is required");
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "permhash: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << Json{{"error", std::string(permhash::error_code_name(e.code()))},
                      {"detail", e.detail()}}
                     .dump()
              << '\n';
    return kExitDomain;
  } catch (const IoError& e) {
    std::cerr << Json{{"error", "IO_ERROR"}, {"detail", e.what()}}.dump() << '\n';
    return kExitDomain;
  }
  return 0;
}
