// Command-line front end: match, resolve, simulate, mutualism.
//
// Exit status: 0 success, 2 input error, 1 internal error.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "fso/errors.hpp"
#include "fso/io.hpp"

namespace fs = std::filesystem;
using fso::io::Json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInternal = 1;

void setup_logging() {
  auto logger = spdlog::stderr_color_st("fso");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* level = std::getenv("FSO_LOG");
  spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    fso::io::write_file(out, text);
    spdlog::info("wrote {}", out);
  }
}

struct MatchArgs {
  std::string community;
  std::string taxonomy;
  std::vector<std::string> files;
  bool allow_specialization = false;
  bool no_time_overlap = false;
  bool no_promote = false;
};

int cmd_match(const MatchArgs& args, const std::string& out) {
  fso::io::CommunitySetup setup;
  if (!args.community.empty()) {
    fs::path path(args.community);
    auto doc = fso::io::parse_json(fso::io::read_file(path), path.string());
    setup = fso::io::load_community_setup(doc, path.parent_path());
  }
  if (!args.taxonomy.empty()) {
    try {
      setup.taxonomy = fso::parse_taxonomy(fso::io::read_file(args.taxonomy));
    } catch (const fso::InputError& e) {
      throw fso::InputError(args.taxonomy + ": " + e.what());
    }
  }
  if (args.allow_specialization) setup.policy.allow_specialization = true;
  if (args.no_time_overlap) setup.policy.require_time_overlap = false;
  if (args.no_promote) setup.promote_groups = false;

  // One member per positional file, named after the file stem.
  std::map<std::string, int> seen;
  for (const auto& f : args.files) {
    fs::path path(f);
    auto id = path.stem().string();
    if (int n = seen[id]++; n > 0) id += "#" + std::to_string(n + 1);
    setup.publications.push_back({id, path});
  }
  spdlog::debug("matching {} publications", setup.publications.size());
  emit(fso::io::run_match(setup).dump(2) + "\n", out);
  return 0;
}

int cmd_resolve(const std::string& fixture_path, const std::string& out) {
  auto doc = fso::io::parse_json(fso::io::read_file(fixture_path), fixture_path);
  auto report = fso::io::run_resolve(fso::io::load_fso_fixture(doc));
  emit(report.dump(2) + "\n", out);
  return 0;
}

int cmd_mutualism(const std::string& path, bool extended, const std::string& out) {
  auto doc = fso::io::parse_json(fso::io::read_file(path), path);
  emit(fso::io::witness_report(fso::io::load_action_document(doc), extended).dump(2) + "\n", out);
  return 0;
}

struct SimulateArgs {
  std::string scenario;
  std::size_t replicates = 1;
  bool dump_replicates = false;
  unsigned threads = 0;
};

int cmd_simulate(const SimulateArgs& args, std::optional<std::uint64_t> seed, const std::string& out) {
  auto doc = fso::io::parse_json(fso::io::read_file(args.scenario), args.scenario);
  auto specs = fso::io::load_scenarios(doc);
  if (args.replicates < 1) throw fso::InvalidParams("--replicates must be at least 1");

  fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw fso::InputError("cannot create output directory " + dir.string());

  // Run everything first; files are written once all aggregation is done.
  std::vector<std::pair<fso::ScenarioSpec, fso::AggregateTrace>> runs;
  for (auto spec : specs) {
    if (seed) spec.seed = *seed;
    spdlog::info("simulating {} ({} replicates, seed {})", fso::to_string(spec.topology),
                 args.replicates, spec.seed);
    runs.emplace_back(spec, fso::monte_carlo(spec, args.replicates, args.threads));
  }
  for (const auto& [spec, agg] : runs) {
    auto name = std::string(fso::to_string(spec.topology));
    fso::io::write_file(dir / (name + ".csv"), fso::io::aggregate_csv(agg));
    if (args.dump_replicates) {
      fso::io::write_file(dir / (name + "_replicates.csv"), fso::io::replicates_csv(agg));
    }
    std::cout << name << " final_mean_diffusion=" << fmt::format("{}", agg.mean.back())
              << " replicates=" << args.replicates << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Service-oriented community matching, fractal organization resolution and "
               "knowledge-diffusion simulation"};
  app.require_subcommand(1);

  std::string out;
  std::optional<std::uint64_t> seed;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "Output path (simulate: output directory)");
    sub->add_option("--seed", seed, "Random seed (default 0, or the scenario's seed)");
  };

  MatchArgs match_args;
  auto* match = app.add_subcommand("match", "Publish service descriptions and report matches");
  match->add_option("files", match_args.files, "Description files, one member per file");
  match->add_option("--community", match_args.community, "Community JSON document");
  match->add_option("--taxonomy", match_args.taxonomy, "Taxonomy file (child subClassOf parent)");
  match->add_flag("--allow-specialization", match_args.allow_specialization,
                  "Let a supertype offer satisfy a subtype request");
  match->add_flag("--no-time-overlap", match_args.no_time_overlap,
                  "Match regardless of time windows");
  match->add_flag("--no-promote", match_args.no_promote,
                  "Do not promote group matches to activity members");
  add_common(match);

  std::string fixture;
  auto* resolve = app.add_subcommand("resolve", "Resolve triggering conditions in an FSO fixture");
  resolve->add_option("fixture,--fixture", fixture, "FSO fixture JSON")->required();
  add_common(resolve);

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run knowledge-diffusion scenarios");
  simulate->add_option("--scenario", sim_args.scenario, "Scenario JSON")->required();
  simulate->add_option("--replicates", sim_args.replicates, "Monte-Carlo replicates");
  simulate->add_flag("--dump-replicates", sim_args.dump_replicates,
                     "Also write per-replicate traces");
  simulate->add_option("--threads", sim_args.threads, "Worker threads (0 = all cores)");
  add_common(simulate);

  std::string action_doc;
  bool extended = false;
  auto* mutualism = app.add_subcommand("mutualism", "Check mutualistic preconditions");
  mutualism->add_option("document", action_doc, "Action-system JSON document")->required();
  mutualism->add_flag("--extended", extended, "Use the extended (cost-tolerant) conditions");
  add_common(mutualism);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (match->parsed()) return cmd_match(match_args, out);
    if (resolve->parsed()) return cmd_resolve(fixture, out);
    if (simulate->parsed()) return cmd_simulate(sim_args, seed, out);
    if (mutualism->parsed()) return cmd_mutualism(action_doc, extended, out);
  } catch (const fso::Error& e) {
    spdlog::error("{}", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    spdlog::critical("internal error: {}", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}
