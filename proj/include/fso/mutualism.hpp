#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fso {

using ActionId = std::string;

// Significance of an action for the system it occurs in.
enum class Valuation : std::int8_t { Negative = -1, Neutral = 0, Positive = 1 };

// Throws std::invalid_argument for values outside {-1, 0, 1}.
Valuation valuation_from_int(int value);
constexpr int to_int(Valuation v) noexcept { return static_cast<int>(v); }

// A system together with its action set and its evaluation of each action.
// The action set is exactly the key set of the evaluation map, so evaluation
// is total by construction.
class ActionSystem {
 public:
  ActionSystem() = default;
  explicit ActionSystem(std::string id, std::map<ActionId, Valuation> eval = {})
      : id_(std::move(id)), eval_(std::move(eval)) {}

  const std::string& id() const noexcept { return id_; }
  const std::map<ActionId, Valuation>& evaluations() const noexcept { return eval_; }

  bool has_action(const ActionId& action) const { return eval_.contains(action); }
  Valuation eval(const ActionId& action) const;  // throws std::out_of_range
  std::size_t size() const noexcept { return eval_.size(); }

  void set(const ActionId& action, Valuation v) { eval_[action] = v; }

  bool operator==(const ActionSystem&) const = default;

 private:
  std::string id_;
  std::map<ActionId, Valuation> eval_;
};

// Partial bijection between the actions of a source and a target system.
class ActionCorrespondence {
 public:
  ActionCorrespondence() = default;
  ActionCorrespondence(std::string source, std::string target)
      : source_(std::move(source)), target_(std::move(target)) {}
  // Throws std::invalid_argument if the pairs are not injective both ways.
  ActionCorrespondence(std::string source, std::string target,
                       std::span<const std::pair<ActionId, ActionId>> pairs);

  // Throws std::invalid_argument if either endpoint is already mapped.
  void add(const ActionId& from, const ActionId& to);

  const std::string& source() const noexcept { return source_; }
  const std::string& target() const noexcept { return target_; }

  std::optional<ActionId> act(const ActionId& from) const;
  std::optional<ActionId> act_inverse(const ActionId& to) const;

  const std::map<ActionId, ActionId>& forward() const noexcept { return forward_; }
  std::size_t size() const noexcept { return forward_.size(); }

  // Same pairs with the coordinates (and endpoint systems) swapped.
  ActionCorrespondence inverse() const;

  // Throws CorrespondenceMismatch unless this maps `source` onto `target`.
  void check_against(const ActionSystem& source, const ActionSystem& target) const;

  // True when the mapping is a total bijection between the two action sets.
  bool is_total_bijection(const ActionSystem& source, const ActionSystem& target) const;

  bool operator==(const ActionCorrespondence&) const = default;

 private:
  std::string source_;
  std::string target_;
  std::map<ActionId, ActionId> forward_;
  std::map<ActionId, ActionId> backward_;
};

struct MutualisticWitness {
  ActionId forward_action;   // a in the source: eval_R(act(a)) > 0
  ActionId backward_action;  // b in the target: eval_D(act^-1(b)) > 0

  bool operator==(const MutualisticWitness&) const = default;
};

// Mutualistic precondition. Both existentials must hold:
//   exists a in A_D: eval_D(a) >= 0 and eval_R(act(a)) > 0
//   exists b in A_R: eval_R(b) >= 0 and eval_D(act^-1(b)) > 0
// The witness is the lexicographically least (a, b). Throws
// CorrespondenceMismatch if `corr` does not map `source` onto `target`.
std::optional<MutualisticWitness> check_precondition(const ActionSystem& source,
                                                     const ActionSystem& target,
                                                     const ActionCorrespondence& corr);

// Extended variant: the actor-side non-negativity clauses are dropped, so
// costly actions may trigger the relationship.
std::optional<MutualisticWitness> check_extended(const ActionSystem& source,
                                                 const ActionSystem& target,
                                                 const ActionCorrespondence& corr);

using SystemPair = std::pair<std::string, std::string>;

// Transitive closure (irreflexive) of the directed relation source -> target
// over every correspondence whose precondition holds. Correspondences that
// name unknown systems throw CorrespondenceMismatch.
std::set<SystemPair> mutualistic_closure(std::span<const ActionSystem> systems,
                                         std::span<const ActionCorrespondence> corrs,
                                         bool extended);

}  // namespace fso
