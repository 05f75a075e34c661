#pragma once

// Shared generators and fixture helpers for the unit and acceptance suites.

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "fso/descriptions.hpp"
#include "fso/fractal.hpp"
#include "fso/io.hpp"
#include "fso/mutualism.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return FSO_DATA_DIR; }

inline std::string sample_text() { return fso::io::read_file(data_dir() / "descriptions" / "sample.ttl"); }

inline fso::Taxonomy fitness_taxonomy() {
  fso::Taxonomy t;
  t.add_subclass("Walking", "Fitness");
  t.add_subclass("Jogging", "Fitness");
  t.add_subclass("Cycling", "Fitness");
  return t;
}

inline fso::ServiceDescription make(std::optional<std::string> provide,
                                    std::optional<std::string> request,
                                    std::string start = "2013-05-12T17:00:00",
                                    std::string end = "2013-05-12T21:00:00",
                                    std::string creator = "http://example.org/u#this") {
  fso::ServiceDescription d;
  d.creation_time = fso::Timestamp::parse("2013-05-12T13:00:00");
  d.start_time = fso::Timestamp::parse(start);
  d.end_time = fso::Timestamp::parse(end);
  d.creator = std::move(creator);
  d.provide = std::move(provide);
  d.request = std::move(request);
  return d;
}

inline std::string random_timestamp(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d", pick(1990, 2030), pick(1, 12),
                pick(1, 28), pick(0, 23), pick(0, 59), pick(0, 59));
  std::string s = buf;
  if (pick(0, 4) == 0) s += "." + std::to_string(pick(0, 999));
  return s;
}

// Random valid record covering every optional field and both type spellings.
inline fso::ServiceDescription random_description(std::mt19937_64& rng) {
  auto coin = [&] { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; };
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto type = [&]() -> std::string {
    static const std::vector<std::string> bare = {"Walking", "Fitness", "Jogging", "Location",
                                                  "Meal_Delivery", "Tai-Chi2", "x"};
    if (pick(0, 3) == 0) return "http://example.org/types/T" + std::to_string(pick(0, 99));
    return bare[static_cast<std::size_t>(pick(0, static_cast<int>(bare.size()) - 1))];
  };

  fso::ServiceDescription d;
  d.creation_time = fso::Timestamp::parse(random_timestamp(rng));
  auto a = random_timestamp(rng), b = random_timestamp(rng);
  if (b < a) std::swap(a, b);
  d.start_time = fso::Timestamp::parse(a);
  d.end_time = fso::Timestamp::parse(b);
  d.creator = "http://www.pats.ua.ac.be/aal/user/" + std::to_string(pick(1, 99999)) + "#this";
  if (coin()) {
    fso::LocationSpec loc{"http://schema.org/Place" + std::to_string(pick(0, 9)), std::nullopt};
    if (coin()) loc.located_in = "http://dbpedia.org/resource/City" + std::to_string(pick(0, 9));
    d.location = loc;
  }
  switch (pick(0, 2)) {
    case 0: d.provide = type(); break;
    case 1: d.request = type(); break;
    default:
      d.provide = type();
      d.request = type();
  }
  return d;
}

// Random system pair with up to `max_actions` actions per side and a random
// injective correspondence.
struct RandomPair {
  fso::ActionSystem d;
  fso::ActionSystem r;
  fso::ActionCorrespondence corr;
};

inline RandomPair random_pair(std::mt19937_64& rng, std::size_t max_actions = 6) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  RandomPair out{fso::ActionSystem("D"), fso::ActionSystem("R"), fso::ActionCorrespondence("D", "R")};
  std::vector<std::string> da, ra;
  for (std::size_t i = pick(0, max_actions); i > 0; --i) {
    da.push_back("a" + std::to_string(i));
    out.d.set(da.back(), fso::valuation_from_int(static_cast<int>(pick(0, 2)) - 1));
  }
  for (std::size_t i = pick(0, max_actions); i > 0; --i) {
    ra.push_back("b" + std::to_string(i));
    out.r.set(ra.back(), fso::valuation_from_int(static_cast<int>(pick(0, 2)) - 1));
  }
  std::shuffle(ra.begin(), ra.end(), rng);
  const std::size_t k = std::min(da.size(), ra.size());
  for (std::size_t i = 0; i < k; ++i)
    if (pick(0, 3) != 0) out.corr.add(da[i], ra[i]);
  return out;
}

struct RandomFso {
  fso::Organization org;
  std::vector<std::string> community_ids;
};

// Random tree of at most `max_levels` levels and `max_members` members with
// offers drawn from T0..T5 (T3 < T0, T4 < T1, T5 < T3).
inline fso::Taxonomy small_taxonomy() {
  fso::Taxonomy t;
  t.add_subclass("T3", "T0");
  t.add_subclass("T4", "T1");
  t.add_subclass("T5", "T3");
  return t;
}

inline std::string random_type(std::mt19937_64& rng) {
  return "T" + std::to_string(std::uniform_int_distribution<int>(0, 5)(rng));
}

inline RandomFso random_fso(std::mt19937_64& rng, std::size_t max_levels = 4,
                            std::size_t max_members = 30) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  RandomFso out{fso::Organization("c0", small_taxonomy()), {"c0"}};
  const std::size_t communities = pick(1, 8);
  for (std::size_t i = 1; i < communities; ++i) {
    // parent chosen among nodes that still leave room for one more level
    std::vector<std::string> candidates;
    for (const auto& id : out.community_ids)
      if (out.org.depth(id) + 1 < max_levels) candidates.push_back(id);
    const auto& parent = candidates[pick(0, candidates.size() - 1)];
    auto id = "c" + std::to_string(i);
    out.org.add_community(parent, id);
    out.community_ids.push_back(id);
  }
  const std::size_t members = pick(0, max_members);
  for (std::size_t m = 0; m < members; ++m) {
    std::vector<std::string> offers;
    for (std::size_t k = pick(1, 2); k > 0; --k) offers.push_back(random_type(rng));
    out.org.add_member(out.community_ids[pick(0, out.community_ids.size() - 1)],
                       "m" + std::to_string(m), offers);
  }
  return out;
}

inline fso::TriggeringCondition random_condition(std::mt19937_64& rng, const RandomFso& fso,
                                                 const std::string& id = "cond") {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  fso::TriggeringCondition c;
  c.id = id;
  c.origin = fso.community_ids[pick(0, fso.community_ids.size() - 1)];
  for (std::size_t k = pick(1, 4); k > 0; --k) c.required_roles.push_back(random_type(rng));
  return c;
}

}  // namespace fixtures
