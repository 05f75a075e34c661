// Acceptance gate: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include <fmt/core.h>
#include <unistd.h>

#include "fixtures.hpp"
#include "fso/community.hpp"
#include "fso/descriptions.hpp"
#include "fso/diffusion.hpp"
#include "fso/errors.hpp"
#include "fso/fractal.hpp"
#include "fso/io.hpp"
#include "fso/mutualism.hpp"
#include "fso/taxonomy.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome mutualism_oracle() {
  auto start = Clock::now();
  std::size_t instances = 0, mismatches = 0;
  oracle::for_each_small_instance(3, [&](const oracle::SmallInstance& inst) {
    ++instances;
    if (fso::check_precondition(inst.d, inst.r, inst.corr) !=
        oracle::witness(inst.d_eval, inst.r_eval, inst.pairs, true))
      ++mismatches;
    if (fso::check_extended(inst.d, inst.r, inst.corr) !=
        oracle::witness(inst.d_eval, inst.r_eval, inst.pairs, false))
      ++mismatches;
  });
  double secs = seconds_since(start);
  return {mismatches == 0 && secs < 30.0,
          fmt::format("{} instances, {} discrepancies, {:.2f} s", instances, mismatches, secs)};
}

Outcome weakening() {
  std::mt19937_64 rng(1001);
  int violations = 0, strict = 0;
  for (int i = 0; i < 10000; ++i) {
    auto [d, r, corr] = fixtures::random_pair(rng);
    if (fso::check_precondition(d, r, corr)) {
      ++strict;
      if (!fso::check_extended(d, r, corr)) ++violations;
    }
  }
  return {violations == 0, fmt::format("10000 instances ({} with a witness), {} violations", strict, violations)};
}

Outcome symmetry() {
  std::mt19937_64 rng(1002);
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    auto [d, r, corr] = fixtures::random_pair(rng);
    bool forward = fso::check_precondition(d, r, corr).has_value();
    bool backward = fso::check_precondition(r, d, corr.inverse()).has_value();
    if (forward != backward) ++violations;
  }
  return {violations == 0, fmt::format("10000 instances, {} violations", violations)};
}

Outcome subsumption() {
  std::mt19937_64 rng(1003);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 50)(rng);
    double density = std::uniform_real_distribution<double>(0.0, 0.2)(rng);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);  // hide the topological order in the names
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    fso::Taxonomy t;
    for (std::size_t i = 0; i < n; ++i) t.add_type("t" + std::to_string(i));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (std::bernoulli_distribution(density)(rng)) {
          edges.emplace_back(perm[a], perm[b]);
          t.add_subclass("t" + std::to_string(perm[a]), "t" + std::to_string(perm[b]));
        }
    auto ref = oracle::closure(n, edges);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (t.is_subtype("t" + std::to_string(a), "t" + std::to_string(b)) != ref[a][b]) ++mismatches;
  }
  auto fitness = fixtures::fitness_taxonomy().subtypes_of("Fitness");
  bool example = fitness == std::set<std::string>{"Fitness", "Walking", "Jogging", "Cycling"};
  return {mismatches == 0 && example,
          fmt::format("200 DAGs, {} mismatches, Fitness subtypes {}", mismatches, example ? "ok" : "wrong")};
}

Outcome parser() {
  auto records = fso::parse_descriptions(fixtures::sample_text());
  bool sample = records.size() == 1;
  if (sample) {
    const auto& d = records[0];
    sample = d.creation_time.str() == "2013-05-12T13:00:00" && d.start_time.str() == "2013-05-12T17:00:00" &&
             d.end_time.str() == "2013-05-12T21:00:00" &&
             d.creator == "http://www.pats.ua.ac.be/aal/user/15441#this" && d.provide == "Walking" &&
             d.request == "Walking" && d.location &&
             d.location->place_class == "http://schema.org/Beach" &&
             d.location->located_in == "http://dbpedia.org/resource/Borgerhout";
  }

  std::mt19937_64 rng(1005);
  int round_trip_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    auto d = fixtures::random_description(rng);
    auto back = fso::parse_descriptions(fso::serialize_description(d));
    if (back.size() != 1 || !(back[0] == d)) ++round_trip_failures;
  }

  bool rejects = false;
  try {
    fso::parse_descriptions(
        "@prefix service: <http://www.pats.ua.ac.be/AALService#> .\n"
        "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
        "[ service:creationTime \"2013-05-12T13:00:00\"^^xsd:dateTime ;\n"
        "  service:startTime \"2013-05-12T17:00:00\"^^xsd:dateTime ;\n"
        "  service:endTime \"2013-05-12T21:00:00\"^^xsd:dateTime ;\n"
        "  service:hasCreator <http://example.org/u#this> ] .\n");
  } catch (const fso::ValidationError&) {
    rejects = true;
  }
  return {sample && round_trip_failures == 0 && rejects,
          fmt::format("sample fields {}, {} round-trip failures in 1000, empty record {}",
                      sample ? "exact" : "wrong", round_trip_failures, rejects ? "rejected" : "accepted")};
}

Outcome matching() {
  const auto tax = fixtures::fitness_taxonomy();
  using fixtures::make;
  bool c1 = fso::match_pair(make("Walking", std::nullopt), make(std::nullopt, "Fitness"), tax, {}) ==
            fso::MatchKind{fso::ServiceMatch{fso::Side::First, "Walking"}};
  bool c2 = std::holds_alternative<fso::NoMatch>(
                fso::match_pair(make("Fitness", std::nullopt), make(std::nullopt, "Walking"), tax, {})) &&
            std::holds_alternative<fso::ServiceMatch>(fso::match_pair(
                make("Fitness", std::nullopt), make(std::nullopt, "Walking"), tax, fso::MatchPolicy{true, true}));
  auto sample = fso::parse_descriptions(fixtures::sample_text()).front();
  bool c3 = fso::match_pair(sample, sample, tax, {}) == fso::MatchKind{fso::GroupMatch{"Walking"}};

  auto setup = fso::io::load_community_setup(
      fso::io::parse_json(fso::io::read_file(fixtures::data_dir() / "community_walk.json"), "community_walk.json"),
      fixtures::data_dir());
  auto result = fso::io::run_match(setup);
  const auto& acts = result["activities"];
  bool activity = acts.size() == 1 &&
              acts[0]["participants"] == fso::io::Json::array({"member1", "member2", "member3"}) &&
              acts[0]["bound"] == true && acts[0]["location_provider"] == "member4";
  return {c1 && c2 && c3 && activity,
          fmt::format("Walking->Fitness {}, Fitness->Walking gate {}, Walking/Walking group {}, activity {}",
                      c1 ? "ok" : "wrong", c2 ? "ok" : "wrong", c3 ? "ok" : "wrong", activity ? "ok" : "wrong")};
}

Outcome fso_resolution() {
  std::mt19937_64 rng(1007);
  const auto tax = fixtures::small_taxonomy();
  int long_trails = 0, superset_failures = 0, local_cases = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto tree = fixtures::random_fso(rng, 4, 30);
    auto cond = fixtures::random_condition(rng, tree);
    const auto& origin = tree.org.node(cond.origin);
    std::vector<std::vector<std::string>> offers;
    for (const auto& m : origin.members) offers.push_back(m.offers);
    const bool local = oracle::staffable(cond.required_roles, offers, tax);
    auto r = tree.org.resolve(cond);
    if (r.trail.size() > origin.depth) ++long_trails;
    if (local) {
      ++local_cases;
      if (!r.trail.empty() || !r.complete()) ++superset_failures;
    }
  }
  auto path = fixtures::data_dir() / "fso" / "sibling.json";
  auto fixture = fso::io::load_fso_fixture(fso::io::parse_json(fso::io::read_file(path), path.string()));
  auto r = fixture.organization.resolve(fixture.steps.front().condition);
  bool sibling = r.complete() && r.trail.size() == 1;
  return {long_trails == 0 && superset_failures == 0 && sibling,
          fmt::format("1000 trees, {} over-long trails, {}/{} local conditions escalated, sibling fixture {} exception(s)",
                      long_trails, superset_failures, local_cases, r.trail.size())};
}

Outcome topology() {
  auto fractal = fso::gen_fractal(15, 3);
  auto hierarchy = fso::gen_hierarchy(15, 2);
  bool survives = oracle::survives_every_single_removal(fractal);
  auto cuts = fso::cut_vertices(hierarchy);
  return {survives && !cuts.empty(),
          fmt::format("fractal survives all 15 removals: {}, hierarchy cut vertices: {}", survives, cuts.size())};
}

Outcome simulation() {
  auto start = Clock::now();
  constexpr std::size_t reps = 100;
  auto run = [&](int scenario, fso::Topology topo) {
    auto spec = fso::standard_scenario(scenario, topo);
    for (auto& e : spec.isolations) e.strategy = fso::IsolationStrategy::MaxDegree;
    return fso::monte_carlo(spec, reps);
  };
  std::map<std::pair<int, fso::Topology>, fso::AggregateTrace> runs;
  for (int s : {1, 2, 3})
    for (auto t : {fso::Topology::Fractal, fso::Topology::Hierarchy}) runs[{s, t}] = run(s, t);

  int monotone_violations = 0;
  for (const auto& [key, agg] : runs)
    for (const auto& rep : agg.replicates)
      for (std::size_t i = 0; i < rep.values.size(); ++i) {
        double v = rep.values[i];
        if (v < 0.0 || v > 1.0 || (i > 0 && v < rep.values[i - 1])) ++monotone_violations;
      }

  using fso::Topology;
  auto final_mean = [&](int s, Topology t) { return runs[{s, t}].mean.back(); };
  const auto& f1 = runs[{1, Topology::Fractal}];
  const auto& h1 = runs[{1, Topology::Hierarchy}];
  int paired_wins = 0;
  for (std::size_t r = 0; r < reps; ++r)
    if (f1.replicates[r].values.back() >= h1.replicates[r].values.back()) ++paired_wins;
  bool b = final_mean(1, Topology::Fractal) >= final_mean(1, Topology::Hierarchy) && paired_wins >= 90;

  bool c = true;
  for (auto t : {Topology::Fractal, Topology::Hierarchy}) {
    const auto& m = runs[{2, t}].mean;
    c = c && m[150] > m[10];
  }
  bool d = final_mean(3, Topology::Fractal) < final_mean(1, Topology::Fractal) &&
           final_mean(3, Topology::Hierarchy) < final_mean(1, Topology::Hierarchy) &&
           final_mean(3, Topology::Fractal) > final_mean(3, Topology::Hierarchy);
  double secs = seconds_since(start);

  std::string detail = fmt::format(
      "(a) {} violations; (b) S1 fractal {:.4f} vs hierarchy {:.4f}, paired {}/100; "
      "(c) S2 t10->t150 fractal {:.4f}->{:.4f}, hierarchy {:.4f}->{:.4f}; "
      "(d) S3 fractal {:.4f}, hierarchy {:.4f}; {:.2f} s",
      monotone_violations, final_mean(1, Topology::Fractal), final_mean(1, Topology::Hierarchy), paired_wins,
      runs[{2, Topology::Fractal}].mean[10], runs[{2, Topology::Fractal}].mean[150],
      runs[{2, Topology::Hierarchy}].mean[10], runs[{2, Topology::Hierarchy}].mean[150],
      final_mean(3, Topology::Fractal), final_mean(3, Topology::Hierarchy), secs);
  return {monotone_violations == 0 && b && c && d && secs < 60.0, detail};
}

Outcome determinism() {
  auto root = fs::temp_directory_path() / ("fso_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  auto data = fixtures::data_dir();
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"match", "match --community " + (data / "community_walk.json").string() + " --out {}/out.json"},
      {"resolve", "resolve " + (data / "fso" / "sibling.json").string() + " --out {}/out.json"},
      {"mutualism", "mutualism " + (data / "mutualism" / "animals_plants.json").string() + " --out {}/out.json"},
      {"simulate", "simulate --scenario " + (data / "scenarios" / "s3.json").string() +
                       " --replicates 20 --dump-replicates --out {}"},
  };
  int differing = 0, failed = 0;
  for (const auto& [name, args] : commands) {
    std::vector<std::string> snapshots;
    for (int pass = 0; pass < 2; ++pass) {
      auto dir = root / (name + std::to_string(pass));
      fs::create_directories(dir);
      auto cmd = std::string(FSO_CLI) + " " + fmt::format(fmt::runtime(args), dir.string()) + " > " +
                 (dir / "stdout").string();
      if (std::system(cmd.c_str()) != 0) ++failed;
      std::string all;
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(dir)) files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) all += f.filename().string() + "\n" + fso::io::read_file(f);
      snapshots.push_back(all);
    }
    if (snapshots[0] != snapshots[1]) ++differing;
  }
  fs::remove_all(root);
  return {differing == 0 && failed == 0,
          fmt::format("{} commands run twice, {} differing outputs, {} failed runs", commands.size(), differing,
                      failed)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"mutualism oracle equivalence", mutualism_oracle},
      {"weakening law", weakening},
      {"symmetry law", symmetry},
      {"subsumption oracle", subsumption},
      {"description parser", parser},
      {"matching", matching},
      {"fractal resolution", fso_resolution},
      {"topology", topology},
      {"simulation", simulation},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << fmt::format("[{}] {:>2}. {}: {}", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail)
              << std::endl;
  }
  std::cout << fmt::format("{}/{} criteria passed", criteria.size() - static_cast<std::size_t>(failures),
                           criteria.size())
            << std::endl;
  return failures == 0 ? 0 : 1;
}
