#include "fso/io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <functional>
#include <sstream>

#include "fso/errors.hpp"

namespace fso::io {

namespace {

// nlohmann reports type errors through its own exception hierarchy; turn
// them into input errors carrying the document name.
template <typename F>
auto guarded(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InputError(what + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(what + ": " + e.what());
  }
}

IsolationStrategy strategy_from(const std::string& name) {
  if (name == "max_degree" || name == "MaxDegree") return IsolationStrategy::MaxDegree;
  if (name == "random" || name == "Random") return IsolationStrategy::Random;
  throw InputError("unknown isolation strategy \"" + name + "\"");
}

Topology topology_from(const std::string& name) {
  if (name == "fractal" || name == "Fractal") return Topology::Fractal;
  if (name == "hierarchy" || name == "Hierarchy") return Topology::Hierarchy;
  throw InputError("unknown topology \"" + name + "\"");
}

Json description_summary(const Publication& p) {
  Json j;
  j["member"] = p.member;
  j["publication"] = p.index;
  j["role"] = std::string(to_string(classify(p.description)));
  j["provide"] = p.description.provide ? Json(*p.description.provide) : Json(nullptr);
  j["request"] = p.description.request ? Json(*p.description.request) : Json(nullptr);
  j["start"] = p.description.start_time.str();
  j["end"] = p.description.end_time.str();
  return j;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
  if (!out) throw Error("write failed for " + path.string());
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

ActionDocument load_action_document(const Json& doc) {
  return guarded("mutualism document", [&] {
    ActionDocument out;
    for (const auto& [id, actions] : doc.at("systems").items()) {
      ActionSystem system(id);
      for (const auto& [action, value] : actions.items()) {
        system.set(action, valuation_from_int(value.get<int>()));
      }
      out.systems.push_back(std::move(system));
    }
    for (const auto& c : doc.value("correspondences", Json::array())) {
      ActionCorrespondence corr(c.at("source").get<std::string>(), c.at("target").get<std::string>());
      for (const auto& pair : c.at("pairs")) {
        if (!pair.is_array() || pair.size() != 2) {
          throw InputError("correspondence pairs must be [source_action, target_action]");
        }
        corr.add(pair[0].get<std::string>(), pair[1].get<std::string>());
      }
      out.correspondences.push_back(std::move(corr));
    }
    return out;
  });
}

Json witness_report(const ActionDocument& doc, bool extended) {
  std::map<std::string, const ActionSystem*> by_id;
  for (const auto& s : doc.systems) by_id[s.id()] = &s;

  Json pairs = Json::array();
  for (const auto& corr : doc.correspondences) {
    auto s = by_id.find(corr.source());
    auto t = by_id.find(corr.target());
    if (s == by_id.end() || t == by_id.end()) {
      throw InputError("correspondence " + corr.source() + "->" + corr.target() +
                       " names an unknown system");
    }
    auto as_json = [](const std::optional<MutualisticWitness>& w) {
      if (!w) return Json(nullptr);
      return Json{{"forward_action", w->forward_action}, {"backward_action", w->backward_action}};
    };
    pairs.push_back({{"source", corr.source()},
                     {"target", corr.target()},
                     {"precondition", as_json(check_precondition(*s->second, *t->second, corr))},
                     {"extended", as_json(check_extended(*s->second, *t->second, corr))},
                     {"total_bijection", corr.is_total_bijection(*s->second, *t->second)}});
  }
  Json closure = Json::array();
  for (const auto& [a, b] : mutualistic_closure(doc.systems, doc.correspondences, extended)) {
    closure.push_back({a, b});
  }
  return {{"correspondences", pairs}, {"closure", closure}, {"extended", extended}};
}

CommunitySetup load_community_setup(const Json& doc, const std::filesystem::path& base) {
  return guarded("community document", [&] {
    CommunitySetup setup;
    auto resolve = [&](const std::string& p) {
      std::filesystem::path path(p);
      return path.is_absolute() ? path : base / path;
    };
    if (doc.contains("taxonomy")) {
      auto path = resolve(doc.at("taxonomy").get<std::string>());
      setup.taxonomy = parse_taxonomy(read_file(path));
    }
    if (doc.contains("policy")) {
      const auto& pol = doc.at("policy");
      setup.policy.allow_specialization = pol.value("allow_specialization", false);
      setup.policy.require_time_overlap = pol.value("require_time_overlap", true);
    }
    setup.promote_groups = doc.value("promote_groups", true);
    for (const auto& m : doc.at("members")) {
      auto id = m.at("id").get<std::string>();
      auto files = m.value("descriptions", std::vector<std::string>{});
      if (files.empty()) setup.publications.push_back({id, {}});
      for (const auto& f : files) setup.publications.push_back({id, resolve(f)});
    }
    return setup;
  });
}

Json event_to_json(const MatchEvent& event) {
  Json j;
  j["kind"] = std::string(kind_name(event.kind));
  j["publications"] = {event.first_publication, event.second_publication};
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ServiceMatch>) {
          bool first = k.provider == Side::First;
          j["provider"] = first ? event.first_member : event.second_member;
          j["requester"] = first ? event.second_member : event.first_member;
          j["members"] = {j["provider"], j["requester"]};
          j["type"] = k.type;
        } else if constexpr (std::is_same_v<K, MutualisticMatch>) {
          j["members"] = {event.first_member, event.second_member};
          j["types"] = {k.first_type, k.second_type};
        } else if constexpr (std::is_same_v<K, GroupMatch>) {
          j["members"] = {event.first_member, event.second_member};
          j["type"] = k.type;
        } else {
          j["members"] = {event.first_member, event.second_member};
        }
      },
      event.kind);
  return j;
}

Json run_match(const CommunitySetup& setup) {
  Community community(setup.taxonomy, setup.policy);
  community.set_auto_promote(setup.promote_groups);

  std::vector<std::pair<std::string, std::vector<ServiceDescription>>> loaded;
  for (const auto& entry : setup.publications) {
    if (!community.has_member(entry.member)) community.add_member(entry.member);
    if (entry.file.empty()) continue;
    std::vector<ServiceDescription> parsed;
    try {
      parsed = parse_descriptions(read_file(entry.file));
    } catch (const InputError& e) {
      throw InputError(entry.file.string() + ": " + e.what());
    }
    loaded.emplace_back(entry.member, std::move(parsed));
  }

  Json events = Json::array();
  for (auto& [member, descriptions] : loaded) {
    for (auto& d : descriptions) {
      for (const auto& e : community.publish(member, std::move(d))) {
        events.push_back(event_to_json(e));
      }
    }
  }

  Json activities = Json::array();
  for (const auto& a : community.activities()) {
    Json j{{"id", a.id},
           {"type", a.type},
           {"participants", a.participants},
           {"residual_request", a.residual_request ? Json(*a.residual_request) : Json(nullptr)},
           {"bound", a.bound()},
           {"location_provider", a.location_provider ? Json(*a.location_provider) : Json(nullptr)}};
    activities.push_back(std::move(j));
  }
  Json pending = Json::array();
  for (const auto* p : community.pending_publications()) pending.push_back(description_summary(*p));

  return {{"events", events}, {"activities", activities}, {"pending", pending}};
}

FsoFixture load_fso_fixture(const Json& doc) {
  return guarded("fso fixture", [&] {
    Taxonomy taxonomy;
    for (const auto& edge : doc.value("taxonomy", Json::array())) {
      if (!edge.is_array() || edge.size() != 2) {
        throw InputError("taxonomy entries must be [child, parent]");
      }
      taxonomy.add_subclass(edge[0].get<std::string>(), edge[1].get<std::string>());
    }
    const auto& root = doc.at("community");
    FsoFixture fixture{Organization(root.at("id").get<std::string>(), std::move(taxonomy)), {}};
    fixture.organization.set_exclusive_booking(doc.value("exclusive_booking", true));

    std::function<void(const Json&, const std::string&)> fill = [&](const Json& node,
                                                                    const std::string& id) {
      for (const auto& m : node.value("members", Json::array())) {
        fixture.organization.add_member(id, m.at("id").get<std::string>(),
                                        m.value("offers", std::vector<std::string>{}));
      }
      for (const auto& child : node.value("children", Json::array())) {
        auto child_id = child.at("id").get<std::string>();
        fixture.organization.add_community(id, child_id);
        fill(child, child_id);
      }
    };
    fill(root, root.at("id").get<std::string>());

    for (const auto& c : doc.value("conditions", Json::array())) {
      FsoFixture::Step step;
      step.condition.id = c.at("id").get<std::string>();
      step.condition.origin = c.at("origin").get<std::string>();
      step.condition.required_roles = c.at("roles").get<std::vector<std::string>>();
      step.dissolve_after = c.value("dissolve", false);
      fixture.steps.push_back(std::move(step));
    }
    return fixture;
  });
}

Json resolution_to_json(const Resolution& r, const TriggeringCondition& condition) {
  Json assignment = Json::array();
  for (const auto& a : r.partial) {
    if (a) assignment.push_back({{"role", a->role}, {"member", a->member}, {"home", a->home}});
  }
  Json trail = Json::array();
  for (const auto& e : r.trail) {
    trail.push_back({{"community", e.community}, {"missing_roles", e.missing_roles}});
  }
  return {{"condition", condition.id},
          {"origin", condition.origin},
          {"status", r.complete() ? "complete" : "incomplete"},
          {"assignment", assignment},
          {"missing_roles", r.missing_roles},
          {"exceptions", trail}};
}

Json run_resolve(FsoFixture fixture) {
  Json results = Json::array();
  for (const auto& step : fixture.steps) {
    auto r = fixture.organization.resolve(step.condition);
    auto j = resolution_to_json(r, step.condition);
    if (r.overlay && step.dissolve_after) {
      fixture.organization.dissolve(*r.overlay);
      j["dissolved"] = true;
    }
    results.push_back(std::move(j));
  }
  return {{"results", results}};
}

std::vector<ScenarioSpec> load_scenarios(const Json& doc) {
  return guarded("scenario", [&] {
    ScenarioSpec base;
    base.agents = doc.value("agents", base.agents);
    base.knowledge_units = doc.value("knowledge", base.knowledge_units);
    base.tasks = doc.value("tasks", base.tasks);
    base.branching = doc.value("branching", base.branching);
    base.cell_size = doc.value("cell_size", base.cell_size);
    base.horizon = doc.value("horizon", base.horizon);
    base.transmit_probability = doc.value("p", base.transmit_probability);
    base.seed = doc.value("seed", base.seed);
    for (const auto& e : doc.value("isolations", Json::array())) {
      base.isolations.push_back(
          {e.at("time").get<std::size_t>(), strategy_from(e.value("strategy", "max_degree"))});
    }

    std::vector<std::string> names;
    if (!doc.contains("topology")) {
      names = {"fractal"};
    } else if (doc.at("topology").is_array()) {
      names = doc.at("topology").get<std::vector<std::string>>();
    } else {
      names = {doc.at("topology").get<std::string>()};
    }
    if (names.empty()) throw InputError("scenario lists no topology");

    std::vector<ScenarioSpec> out;
    for (const auto& name : names) {
      auto spec = base;
      spec.topology = topology_from(name);
      spec.validate();
      out.push_back(std::move(spec));
    }
    return out;
  });
}

std::string trace_csv(const DiffusionTrace& trace) {
  std::string out = "step,diffusion\n";
  for (std::size_t t = 0; t < trace.values.size(); ++t) {
    out += fmt::format("{},{}\n", t, trace.values[t]);
  }
  return out;
}

std::string aggregate_csv(const AggregateTrace& agg) {
  std::string out = "step,mean,min,max\n";
  for (std::size_t t = 0; t < agg.mean.size(); ++t) {
    out += fmt::format("{},{},{},{}\n", t, agg.mean[t], agg.min[t], agg.max[t]);
  }
  return out;
}

std::string replicates_csv(const AggregateTrace& agg) {
  std::string out = "replicate,step,diffusion\n";
  for (std::size_t r = 0; r < agg.replicates.size(); ++r) {
    const auto& values = agg.replicates[r].values;
    for (std::size_t t = 0; t < values.size(); ++t) {
      out += fmt::format("{},{},{}\n", r, t, values[t]);
    }
  }
  return out;
}

}  // namespace fso::io
