#include "fso/fractal.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "fso/errors.hpp"

namespace fso {

std::set<std::string> SocialOverlayNetwork::home_communities() const {
  std::set<std::string> homes;
  for (const auto& a : assignments) homes.insert(a.home);
  return homes;
}

Organization::Organization(const std::string& root_id, Taxonomy taxonomy)
    : taxonomy_(std::move(taxonomy)) {
  if (root_id.empty()) throw std::invalid_argument("community id must not be empty");
  nodes_.push_back(CommunityNode{root_id, std::nullopt, {}, {}, 0});
  node_index_.emplace(root_id, 0);
}

std::size_t Organization::index_of(const std::string& id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) throw UnknownCommunity("unknown community " + id);
  return it->second;
}

const CommunityNode& Organization::node(const std::string& id) const { return nodes_[index_of(id)]; }

void Organization::add_community(const std::string& parent, const std::string& id) {
  const std::size_t p = index_of(parent);
  if (id.empty()) throw std::invalid_argument("community id must not be empty");
  if (node_index_.contains(id)) throw std::invalid_argument("duplicate community id " + id);
  const std::size_t idx = nodes_.size();
  nodes_.push_back(CommunityNode{id, p, {}, {}, nodes_[p].depth + 1});
  nodes_[p].children.push_back(idx);
  node_index_.emplace(id, idx);
}

void Organization::add_member(const std::string& community, const std::string& member,
                              std::vector<std::string> offers) {
  const std::size_t n = index_of(community);
  if (member.empty()) throw std::invalid_argument("member id must not be empty");
  if (member_location_.contains(member)) {
    throw std::invalid_argument("duplicate member id " + member);
  }
  member_location_.emplace(member, std::make_pair(n, nodes_[n].members.size()));
  nodes_[n].members.push_back(RoleOffer{member, std::move(offers)});
}

const std::string& Organization::home_of(const std::string& member) const {
  auto it = member_location_.find(member);
  if (it == member_location_.end()) throw std::out_of_range("unknown member " + member);
  return nodes_[it->second.first].id;
}

std::vector<std::pair<std::string, MemberKind>> Organization::member_view(
    const std::string& id) const {
  const auto& n = node(id);
  std::vector<std::pair<std::string, MemberKind>> out;
  for (const auto& m : n.members) out.emplace_back(m.member, MemberKind::Person);
  for (auto c : n.children) out.emplace_back(nodes_[c].id, MemberKind::CommunityProxy);
  return out;
}

bool Organization::can_play(const std::string& member, const std::string& role) const {
  if (exclusive_booking_ && booked_.contains(member)) return false;
  auto [n, slot] = member_location_.at(member);
  const auto& offers = nodes_[n].members[slot].offers;
  return std::any_of(offers.begin(), offers.end(),
                     [&](const std::string& o) { return taxonomy_.is_subtype(o, role); });
}

// Members newly visible at `node`: its direct members by id, then every other
// descendant community (skipping the subtree already searched) in preorder,
// each community's members by id.
std::vector<std::string> Organization::scope_members(std::size_t node,
                                                     std::optional<std::size_t> skip) const {
  std::vector<std::string> out;
  auto append_sorted = [&](std::size_t n) {
    std::vector<std::string> ids;
    for (const auto& m : nodes_[n].members) ids.push_back(m.member);
    std::sort(ids.begin(), ids.end());
    out.insert(out.end(), ids.begin(), ids.end());
  };
  append_sorted(node);
  std::function<void(std::size_t)> preorder = [&](std::size_t n) {
    append_sorted(n);
    for (auto c : nodes_[n].children) preorder(c);
  };
  for (auto c : nodes_[node].children) {
    if (skip && c == *skip) continue;
    preorder(c);
  }
  return out;
}

Resolution Organization::resolve(const TriggeringCondition& condition) {
  std::size_t current = index_of(condition.origin);
  const auto& roles = condition.required_roles;

  // Bipartite matching roles <-> members over the cumulative scope. A role
  // that gets a member keeps one for good; augmenting paths may only swap
  // which member plays it.
  std::vector<std::string> scope;
  std::map<std::string, std::size_t> owner;  // member -> role index
  std::vector<std::optional<std::string>> assigned(roles.size());

  std::function<bool(std::size_t, std::set<std::string>&)> augment =
      [&](std::size_t role, std::set<std::string>& visited) {
        for (const auto& m : scope) {
          if (visited.contains(m) || !can_play(m, roles[role])) continue;
          visited.insert(m);
          auto it = owner.find(m);
          if (it == owner.end() || augment(it->second, visited)) {
            owner[m] = role;
            assigned[role] = m;
            return true;
          }
        }
        return false;
      };

  Resolution result;
  std::optional<std::size_t> came_from;
  for (;;) {
    auto fresh = scope_members(current, came_from);
    scope.insert(scope.end(), fresh.begin(), fresh.end());

    for (std::size_t r = 0; r < roles.size(); ++r) {
      if (assigned[r]) continue;
      std::set<std::string> visited;
      augment(r, visited);
    }

    std::vector<std::string> missing;
    for (std::size_t r = 0; r < roles.size(); ++r) {
      if (!assigned[r]) missing.push_back(roles[r]);
    }
    if (missing.empty()) break;

    if (!nodes_[current].parent) {
      result.missing_roles = std::move(missing);
      break;
    }
    result.trail.push_back(ExceptionRecord{condition.id, nodes_[current].id, std::move(missing)});
    came_from = current;
    current = *nodes_[current].parent;
  }

  for (std::size_t r = 0; r < roles.size(); ++r) {
    if (assigned[r]) result.partial.push_back(RoleAssignment{roles[r], *assigned[r], home_of(*assigned[r])});
    else result.partial.push_back(std::nullopt);
  }

  if (result.missing_roles.empty()) {
    result.status = ResolutionStatus::Complete;
    SocialOverlayNetwork overlay{condition.id, {}, OverlayStatus::Active};
    for (const auto& a : result.partial) {
      overlay.assignments.push_back(*a);
      if (exclusive_booking_) booked_.insert(a->member);
    }
    result.overlay = std::move(overlay);
  }
  return result;
}

void Organization::dissolve(SocialOverlayNetwork& overlay) {
  if (overlay.status == OverlayStatus::Dissolved) {
    throw AlreadyDissolved("overlay for condition " + overlay.condition + " is already dissolved");
  }
  for (const auto& a : overlay.assignments) booked_.erase(a.member);
  overlay.status = OverlayStatus::Dissolved;
}

}  // namespace fso
