#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "fso/descriptions.hpp"
#include "fso/taxonomy.hpp"

namespace fso {

enum class MemberKind { Person, GroupActivity, CommunityProxy };

std::string_view to_string(MemberKind kind);

struct Member {
  std::string id;
  MemberKind kind = MemberKind::Person;
  std::vector<ServiceDescription> published;
};

struct MatchPolicy {
  // A provider of a supertype may satisfy a request for one of its subtypes
  // (Fitness offered, Walking requested). Off unless the user agrees.
  bool allow_specialization = false;
  bool require_time_overlap = true;
};

enum class Side { First, Second };

struct NoMatch {
  bool operator==(const NoMatch&) const = default;
};
struct ServiceMatch {
  Side provider;
  std::string type;
  bool operator==(const ServiceMatch&) const = default;
};
// first_type flows from the first description to the second, second_type back.
struct MutualisticMatch {
  std::string first_type;
  std::string second_type;
  bool operator==(const MutualisticMatch&) const = default;
};
struct GroupMatch {
  std::string type;
  bool operator==(const GroupMatch&) const = default;
};

using MatchKind = std::variant<NoMatch, ServiceMatch, MutualisticMatch, GroupMatch>;

std::string_view kind_name(const MatchKind& kind);

// True if an offer of `provide` satisfies a request for `request`.
bool satisfies(const std::string& provide, const std::string& request, const Taxonomy& taxonomy,
               const MatchPolicy& policy);

// Closed-interval overlap of the two [start, end] windows.
bool windows_overlap(const ServiceDescription& a, const ServiceDescription& b);

MatchKind match_pair(const ServiceDescription& first, const ServiceDescription& second,
                     const Taxonomy& taxonomy, const MatchPolicy& policy);

// A match between an earlier publication (first) and a later one (second).
struct MatchEvent {
  MatchKind kind;
  std::string first_member;
  std::string second_member;
  std::size_t first_publication = 0;
  std::size_t second_publication = 0;

  bool operator==(const MatchEvent&) const = default;
};

struct Publication {
  std::size_t index = 0;
  std::string member;
  ServiceDescription description;
  bool consumed = false;
  std::optional<std::size_t> activity;  // set for group-activity offers
};

struct GroupActivity {
  std::string id;  // member id of the activity
  std::string type;
  std::set<std::string> participants;
  std::optional<std::string> residual_request;
  std::optional<std::string> location_provider;
  std::optional<LocationSpec> location;
  ServiceDescription description;  // current offer; request cleared once bound
  std::size_t publication = 0;

  bool bound() const noexcept { return !description.request.has_value(); }
};

struct Promotion {
  std::string activity_id;
  std::vector<MatchEvent> events;  // joins/bindings triggered by the activity's own offer
};

// A single service-oriented community: registry, publish-subscribe matching
// in publication order, and promotion of group matches to activity members.
class Community {
 public:
  explicit Community(Taxonomy taxonomy = {}, MatchPolicy policy = {});

  // Throws std::invalid_argument for duplicate ids.
  void add_member(const std::string& id, MemberKind kind = MemberKind::Person);
  bool has_member(const std::string& id) const { return member_index_.contains(id); }

  // Stores `d` and matches it greedily against outstanding publications of
  // other members. Throws UnknownMember or ValidationError.
  std::vector<MatchEvent> publish(const std::string& member, ServiceDescription d);

  // Registers (or reuses, one per shared type) the activity member for a
  // Group event and publishes its derived offer.
  Promotion form_group_activity(const MatchEvent& group_event);

  // Promote Group events automatically inside publish().
  void set_auto_promote(bool on) { auto_promote_ = on; }

  // Residual request attached to new activities of `type`; nullopt means none.
  void set_residual_request(const std::string& type, std::optional<std::string> request);

  std::vector<ServiceDescription> pending() const;
  std::vector<const Publication*> pending_publications() const;

  const std::vector<Member>& members() const noexcept { return members_; }
  const std::vector<Publication>& publications() const noexcept { return publications_; }
  const std::vector<GroupActivity>& activities() const noexcept { return activities_; }
  const std::vector<MatchEvent>& events() const noexcept { return events_; }
  const GroupActivity* find_activity(const std::string& id) const;

  const Taxonomy& taxonomy() const noexcept { return taxonomy_; }
  const MatchPolicy& policy() const noexcept { return policy_; }

 private:
  std::optional<std::string> residual_for(const std::string& type) const;
  void match_new_publication(std::size_t index, std::vector<MatchEvent>& out);
  void record(std::vector<MatchEvent>& out, MatchEvent event);

  Taxonomy taxonomy_;
  MatchPolicy policy_;
  bool auto_promote_ = false;
  std::vector<Member> members_;
  std::map<std::string, std::size_t> member_index_;
  std::vector<Publication> publications_;
  std::vector<GroupActivity> activities_;
  std::vector<MatchEvent> events_;
  std::map<std::string, std::optional<std::string>> residual_requests_;
};

inline constexpr std::string_view kDefaultResidualRequest = "Location";

}  // namespace fso
