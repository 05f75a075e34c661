#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fso/community.hpp"
#include "fso/diffusion.hpp"
#include "fso/fractal.hpp"
#include "fso/mutualism.hpp"
#include "json.hpp"

namespace fso::io {

using Json = nlohmann::json;

// Reads a whole file; throws InputError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);
Json parse_json(const std::string& text, const std::string& source);

// Mutualism document:
//   {"systems": {"H": {"exhaleCO2": 0, ...}, ...},
//    "correspondences": [{"source": "H", "target": "P", "pairs": [["a", "b"], ...]}]}
struct ActionDocument {
  std::vector<ActionSystem> systems;
  std::vector<ActionCorrespondence> correspondences;
};
ActionDocument load_action_document(const Json& doc);
Json witness_report(const ActionDocument& doc, bool extended);

// Community document:
//   {"taxonomy": "tax.txt", "policy": {"allow_specialization": false,
//    "require_time_overlap": true}, "promote_groups": true,
//    "members": [{"id": "m1", "descriptions": ["m1.ttl"]}, ...]}
// Relative paths resolve against `base`.
struct CommunitySetup {
  Taxonomy taxonomy;
  MatchPolicy policy;
  bool promote_groups = true;
  struct Entry {
    std::string member;
    std::filesystem::path file;
  };
  std::vector<Entry> publications;  // publication order
};
CommunitySetup load_community_setup(const Json& doc, const std::filesystem::path& base);

// Publishes every file in order and reports events, activities and pending
// descriptions.
Json run_match(const CommunitySetup& setup);
Json event_to_json(const MatchEvent& event);

// FSO fixture:
//   {"taxonomy": [["Walking", "Fitness"], ...],
//    "exclusive_booking": true,
//    "community": {"id": "root", "members": [{"id": "m", "offers": ["T"]}],
//                  "children": [...]},
//    "conditions": [{"id": "c1", "origin": "leaf", "roles": ["T", ...],
//                    "dissolve": false}]}
struct FsoFixture {
  Organization organization;
  struct Step {
    TriggeringCondition condition;
    bool dissolve_after = false;
  };
  std::vector<Step> steps;
};
FsoFixture load_fso_fixture(const Json& doc);
Json resolution_to_json(const Resolution& resolution, const TriggeringCondition& condition);
Json run_resolve(FsoFixture fixture);

// Scenario document: every ScenarioSpec field is optional; "topology" may be
// a single name or a list (paired runs with identical seeds).
//   {"topology": ["fractal", "hierarchy"], "agents": 15, "knowledge": 15,
//    "tasks": 15, "branching": 2, "cell_size": 3, "horizon": 150, "p": 0.5,
//    "seed": 0, "isolations": [{"time": 10, "strategy": "max_degree"}]}
std::vector<ScenarioSpec> load_scenarios(const Json& doc);

std::string trace_csv(const DiffusionTrace& trace);
std::string aggregate_csv(const AggregateTrace& agg);
std::string replicates_csv(const AggregateTrace& agg);

}  // namespace fso::io
