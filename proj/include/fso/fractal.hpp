#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fso/community.hpp"
#include "fso/taxonomy.hpp"

namespace fso {

// Member of a community node together with the service types it can play.
struct RoleOffer {
  std::string member;
  std::vector<std::string> offers;
};

struct CommunityNode {
  std::string id;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  std::vector<RoleOffer> members;
  std::size_t depth = 0;
};

struct TriggeringCondition {
  std::string id;
  std::string origin;                       // community where the condition fired
  std::vector<std::string> required_roles;  // multiset of service types
};

struct ExceptionRecord {
  std::string condition;
  std::string community;  // the community that raised it
  std::vector<std::string> missing_roles;

  bool operator==(const ExceptionRecord&) const = default;
};

struct RoleAssignment {
  std::string role;
  std::string member;
  std::string home;  // community the member belongs to

  bool operator==(const RoleAssignment&) const = default;
};

enum class OverlayStatus { Active, Dissolved };

// Temporary cross-community team serving one triggering condition.
struct SocialOverlayNetwork {
  std::string condition;
  std::vector<RoleAssignment> assignments;  // in required-role order
  OverlayStatus status = OverlayStatus::Active;

  std::set<std::string> home_communities() const;
  bool operator==(const SocialOverlayNetwork&) const = default;
};

enum class ResolutionStatus { Complete, Incomplete };

struct Resolution {
  ResolutionStatus status = ResolutionStatus::Incomplete;
  std::optional<SocialOverlayNetwork> overlay;          // set when Complete
  std::vector<std::optional<RoleAssignment>> partial;   // per required role
  std::vector<std::string> missing_roles;
  std::vector<ExceptionRecord> trail;

  bool complete() const noexcept { return status == ResolutionStatus::Complete; }
};

// A tree of communities. A child community is visible in its parent as a
// community-proxy member; the actual people live in the node's own member list.
class Organization {
 public:
  explicit Organization(const std::string& root_id, Taxonomy taxonomy = {});

  // Throws UnknownCommunity for a missing parent, std::invalid_argument for
  // a duplicate id.
  void add_community(const std::string& parent, const std::string& id);
  // Member ids are unique across the whole tree.
  void add_member(const std::string& community, const std::string& member,
                  std::vector<std::string> offers);

  const CommunityNode& node(const std::string& id) const;
  const CommunityNode& root() const { return nodes_.front(); }
  const std::vector<CommunityNode>& nodes() const noexcept { return nodes_; }
  std::size_t depth(const std::string& id) const { return node(id).depth; }
  const std::string& home_of(const std::string& member) const;

  // Direct members plus one community-proxy entry per child.
  std::vector<std::pair<std::string, MemberKind>> member_view(const std::string& id) const;

  // A member may hold one active role at a time (default on).
  void set_exclusive_booking(bool on) { exclusive_booking_ = on; }
  bool is_booked(const std::string& member) const { return booked_.contains(member); }

  // Staffs the condition's roles starting at its origin and escalating to
  // the parent while roles are missing. A Complete result books its members.
  // Throws UnknownCommunity if the origin is not in the tree.
  Resolution resolve(const TriggeringCondition& condition);

  // Releases the overlay's members. Throws AlreadyDissolved.
  void dissolve(SocialOverlayNetwork& overlay);

  const Taxonomy& taxonomy() const noexcept { return taxonomy_; }

 private:
  std::size_t index_of(const std::string& id) const;
  std::vector<std::string> scope_members(std::size_t node, std::optional<std::size_t> skip) const;
  bool can_play(const std::string& member, const std::string& role) const;

  Taxonomy taxonomy_;
  std::vector<CommunityNode> nodes_;
  std::map<std::string, std::size_t> node_index_;
  std::map<std::string, std::pair<std::size_t, std::size_t>> member_location_;  // node, slot
  std::set<std::string> booked_;
  bool exclusive_booking_ = true;
};

}  // namespace fso
