#include "fso/mutualism.hpp"

#include <stdexcept>

#include "fso/errors.hpp"

namespace fso {

Valuation valuation_from_int(int value) {
  if (value < -1 || value > 1) {
    throw std::invalid_argument("evaluation must be -1, 0 or 1, got " + std::to_string(value));
  }
  return static_cast<Valuation>(value);
}

Valuation ActionSystem::eval(const ActionId& action) const {
  auto it = eval_.find(action);
  if (it == eval_.end()) throw std::out_of_range("system " + id_ + " has no action " + action);
  return it->second;
}

ActionCorrespondence::ActionCorrespondence(std::string source, std::string target,
                                           std::span<const std::pair<ActionId, ActionId>> pairs)
    : source_(std::move(source)), target_(std::move(target)) {
  for (const auto& [from, to] : pairs) add(from, to);
}

void ActionCorrespondence::add(const ActionId& from, const ActionId& to) {
  if (forward_.contains(from)) {
    throw std::invalid_argument("action " + from + " of " + source_ + " is already mapped");
  }
  if (backward_.contains(to)) {
    throw std::invalid_argument("action " + to + " of " + target_ + " is already mapped");
  }
  forward_.emplace(from, to);
  backward_.emplace(to, from);
}

std::optional<ActionId> ActionCorrespondence::act(const ActionId& from) const {
  auto it = forward_.find(from);
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

std::optional<ActionId> ActionCorrespondence::act_inverse(const ActionId& to) const {
  auto it = backward_.find(to);
  if (it == backward_.end()) return std::nullopt;
  return it->second;
}

ActionCorrespondence ActionCorrespondence::inverse() const {
  ActionCorrespondence inv(target_, source_);
  inv.forward_ = backward_;
  inv.backward_ = forward_;
  return inv;
}

void ActionCorrespondence::check_against(const ActionSystem& source,
                                         const ActionSystem& target) const {
  if (source.id() != source_ || target.id() != target_) {
    throw CorrespondenceMismatch("correspondence " + source_ + "->" + target_ +
                                 " applied to systems " + source.id() + "->" + target.id());
  }
  for (const auto& [from, to] : forward_) {
    if (!source.has_action(from) || !target.has_action(to)) {
      throw CorrespondenceMismatch("pair (" + from + ", " + to +
                                   ") references an action outside its system");
    }
  }
}

bool ActionCorrespondence::is_total_bijection(const ActionSystem& source,
                                              const ActionSystem& target) const {
  return source.size() == target.size() && forward_.size() == source.size();
}

namespace {

// Strict = the actor-side clause eval >= 0 is enforced.
std::optional<MutualisticWitness> find_witness(const ActionSystem& source,
                                               const ActionSystem& target,
                                               const ActionCorrespondence& corr, bool strict) {
  corr.check_against(source, target);

  std::optional<ActionId> forward;
  for (const auto& [a, value] : source.evaluations()) {
    if (strict && to_int(value) < 0) continue;
    auto mapped = corr.act(a);
    if (mapped && to_int(target.eval(*mapped)) > 0) {
      forward = a;
      break;
    }
  }
  if (!forward) return std::nullopt;

  for (const auto& [b, value] : target.evaluations()) {
    if (strict && to_int(value) < 0) continue;
    auto mapped = corr.act_inverse(b);
    if (mapped && to_int(source.eval(*mapped)) > 0) {
      return MutualisticWitness{*forward, b};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<MutualisticWitness> check_precondition(const ActionSystem& source,
                                                     const ActionSystem& target,
                                                     const ActionCorrespondence& corr) {
  return find_witness(source, target, corr, true);
}

std::optional<MutualisticWitness> check_extended(const ActionSystem& source,
                                                 const ActionSystem& target,
                                                 const ActionCorrespondence& corr) {
  return find_witness(source, target, corr, false);
}

std::set<SystemPair> mutualistic_closure(std::span<const ActionSystem> systems,
                                         std::span<const ActionCorrespondence> corrs,
                                         bool extended) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < systems.size(); ++i) index.emplace(systems[i].id(), i);

  const std::size_t n = systems.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& corr : corrs) {
    auto s = index.find(corr.source());
    auto t = index.find(corr.target());
    if (s == index.end() || t == index.end()) {
      throw CorrespondenceMismatch("correspondence " + corr.source() + "->" + corr.target() +
                                   " names an unknown system");
    }
    const auto& d = systems[s->second];
    const auto& r = systems[t->second];
    bool holds = extended ? check_extended(d, r, corr).has_value()
                          : check_precondition(d, r, corr).has_value();
    if (holds) reach[s->second][t->second] = true;
  }

  // Warshall
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;

  std::set<SystemPair> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && reach[i][j]) out.emplace(systems[i].id(), systems[j].id());
  return out;
}

}  // namespace fso
