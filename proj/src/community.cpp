#include "fso/community.hpp"

#include <algorithm>
#include <stdexcept>

#include "fso/errors.hpp"

namespace fso {

std::string_view to_string(MemberKind kind) {
  switch (kind) {
    case MemberKind::Person: return "person";
    case MemberKind::GroupActivity: return "group_activity";
    case MemberKind::CommunityProxy: return "community";
  }
  return "unknown";
}

std::string_view kind_name(const MatchKind& kind) {
  struct Visitor {
    std::string_view operator()(const NoMatch&) const { return "none"; }
    std::string_view operator()(const ServiceMatch&) const { return "service"; }
    std::string_view operator()(const MutualisticMatch&) const { return "mutualistic"; }
    std::string_view operator()(const GroupMatch&) const { return "group"; }
  };
  return std::visit(Visitor{}, kind);
}

bool satisfies(const std::string& provide, const std::string& request, const Taxonomy& taxonomy,
               const MatchPolicy& policy) {
  return taxonomy.is_subtype(provide, request) ||
         (policy.allow_specialization && taxonomy.is_subtype(request, provide));
}

bool windows_overlap(const ServiceDescription& a, const ServiceDescription& b) {
  return a.start_time <= b.end_time && b.start_time <= a.end_time;
}

namespace {

// The service actually exchanged: the more specific of offer and request.
std::string matched_type(const std::string& provide, const std::string& request,
                         const Taxonomy& taxonomy) {
  return taxonomy.is_subtype(provide, request) ? provide : request;
}

std::optional<std::string> direction(const ServiceDescription& from, const ServiceDescription& to,
                                     const Taxonomy& taxonomy, const MatchPolicy& policy) {
  if (!from.provide || !to.request) return std::nullopt;
  if (!satisfies(*from.provide, *to.request, taxonomy, policy)) return std::nullopt;
  return matched_type(*from.provide, *to.request, taxonomy);
}

}  // namespace

MatchKind match_pair(const ServiceDescription& first, const ServiceDescription& second,
                     const Taxonomy& taxonomy, const MatchPolicy& policy) {
  if (policy.require_time_overlap && !windows_overlap(first, second)) return NoMatch{};
  auto forward = direction(first, second, taxonomy, policy);
  auto backward = direction(second, first, taxonomy, policy);
  if (forward && backward) {
    if (*forward == *backward) return GroupMatch{*forward};
    return MutualisticMatch{*forward, *backward};
  }
  if (forward) return ServiceMatch{Side::First, *forward};
  if (backward) return ServiceMatch{Side::Second, *backward};
  return NoMatch{};
}

Community::Community(Taxonomy taxonomy, MatchPolicy policy)
    : taxonomy_(std::move(taxonomy)), policy_(policy) {}

void Community::add_member(const std::string& id, MemberKind kind) {
  if (id.empty()) throw std::invalid_argument("member id must not be empty");
  if (member_index_.contains(id)) throw std::invalid_argument("duplicate member id " + id);
  member_index_.emplace(id, members_.size());
  members_.push_back(Member{id, kind, {}});
}

void Community::set_residual_request(const std::string& type, std::optional<std::string> request) {
  residual_requests_[type] = std::move(request);
}

std::optional<std::string> Community::residual_for(const std::string& type) const {
  auto it = residual_requests_.find(type);
  if (it != residual_requests_.end()) return it->second;
  return std::string(kDefaultResidualRequest);
}

const GroupActivity* Community::find_activity(const std::string& id) const {
  auto it = std::find_if(activities_.begin(), activities_.end(),
                         [&](const GroupActivity& a) { return a.id == id; });
  return it == activities_.end() ? nullptr : &*it;
}

void Community::record(std::vector<MatchEvent>& out, MatchEvent event) {
  events_.push_back(event);
  out.push_back(std::move(event));
}

std::vector<MatchEvent> Community::publish(const std::string& member, ServiceDescription d) {
  auto it = member_index_.find(member);
  if (it == member_index_.end()) throw UnknownMember("unknown member " + member);
  validate(d);

  members_[it->second].published.push_back(d);
  std::size_t index = publications_.size();
  publications_.push_back(Publication{index, member, std::move(d), false, std::nullopt});

  std::vector<MatchEvent> out;
  match_new_publication(index, out);

  if (auto_promote_) {
    std::vector<MatchEvent> promoted;
    for (const auto& event : out) {
      if (!std::holds_alternative<GroupMatch>(event.kind)) continue;
      if (publications_[event.first_publication].activity ||
          publications_[event.second_publication].activity) {
        continue;
      }
      auto promotion = form_group_activity(event);
      promoted.insert(promoted.end(), promotion.events.begin(), promotion.events.end());
    }
    out.insert(out.end(), promoted.begin(), promoted.end());
  }
  return out;
}

void Community::match_new_publication(std::size_t index, std::vector<MatchEvent>& out) {
  const auto new_activity = publications_[index].activity;

  for (std::size_t i = 0; i < index; ++i) {
    auto& candidate = publications_[i];
    auto& incoming = publications_[index];
    if (incoming.consumed && !new_activity) break;
    if (candidate.member == incoming.member) continue;
    if (candidate.consumed && !candidate.activity) continue;
    if (candidate.activity && new_activity) continue;

    const auto& first =
        candidate.activity ? activities_[*candidate.activity].description : candidate.description;
    const auto& second = new_activity ? activities_[*new_activity].description : incoming.description;
    auto kind = match_pair(first, second, taxonomy_, policy_);
    if (std::holds_alternative<NoMatch>(kind)) continue;

    MatchEvent event{kind, candidate.member, incoming.member, i, index};

    auto activity_index = candidate.activity ? candidate.activity : new_activity;
    if (!activity_index) {
      candidate.consumed = true;
      incoming.consumed = true;
      record(out, std::move(event));
      return;
    }

    // One side is an activity offer: the other side joins and/or binds the
    // residual request. The offer itself stays open for later joiners.
    auto& activity = activities_[*activity_index];
    const Side activity_side = candidate.activity ? Side::First : Side::Second;
    auto& other = candidate.activity ? incoming : candidate;
    bool joins = true;
    bool binds = true;
    if (const auto* service = std::get_if<ServiceMatch>(&kind)) {
      joins = service->provider == activity_side;
      binds = !joins;
    }
    if (joins) activity.participants.insert(other.member);
    if (binds && !activity.bound()) {
      activity.location_provider = other.member;
      activity.location = other.description.location;
      activity.description.request.reset();
      publications_[activity.publication].consumed = true;
    }
    other.consumed = true;
    record(out, std::move(event));
    if (!new_activity) return;
  }
}

Promotion Community::form_group_activity(const MatchEvent& group_event) {
  const auto* group = std::get_if<GroupMatch>(&group_event.kind);
  if (!group) throw std::invalid_argument("only group matches can be promoted");
  if (group_event.first_member == group_event.second_member) {
    throw std::invalid_argument("a group needs two distinct members");
  }

  for (auto& activity : activities_) {
    if (activity.type == group->type) {
      activity.participants.insert(group_event.first_member);
      activity.participants.insert(group_event.second_member);
      return Promotion{activity.id, {}};
    }
  }

  const auto& d1 = publications_.at(group_event.first_publication).description;
  const auto& d2 = publications_.at(group_event.second_publication).description;

  std::string id = "activity:" + group->type;
  for (int suffix = 2; has_member(id); ++suffix) {
    id = "activity:" + group->type + ":" + std::to_string(suffix);
  }

  ServiceDescription offer;
  offer.creation_time = std::max(d1.creation_time, d2.creation_time);
  offer.start_time = std::max(d1.start_time, d2.start_time);
  offer.end_time = std::min(d1.end_time, d2.end_time);
  if (offer.start_time > offer.end_time) {
    offer.start_time = std::min(d1.start_time, d2.start_time);
    offer.end_time = std::max(d1.end_time, d2.end_time);
  }
  offer.creator = "urn:fso:member:" + id;
  offer.provide = group->type;
  offer.request = residual_for(group->type);
  validate(offer);

  add_member(id, MemberKind::GroupActivity);
  members_[member_index_.at(id)].published.push_back(offer);

  const std::size_t activity_index = activities_.size();
  const std::size_t pub_index = publications_.size();
  activities_.push_back(GroupActivity{id, group->type,
                                      {group_event.first_member, group_event.second_member},
                                      offer.request, std::nullopt, std::nullopt, offer, pub_index});
  publications_.push_back(Publication{pub_index, id, offer, false, activity_index});
  if (!offer.request) publications_[pub_index].consumed = true;

  Promotion promotion{id, {}};
  match_new_publication(pub_index, promotion.events);
  return promotion;
}

std::vector<const Publication*> Community::pending_publications() const {
  std::vector<const Publication*> out;
  for (const auto& p : publications_) {
    if (!p.consumed) out.push_back(&p);
  }
  return out;
}

std::vector<ServiceDescription> Community::pending() const {
  std::vector<ServiceDescription> out;
  for (const auto* p : pending_publications()) out.push_back(p->description);
  return out;
}

}  // namespace fso
