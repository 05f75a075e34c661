#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>

namespace fso {

// Service-type ontology restricted to subclass edges. Subsumption is the
// reflexive-transitive closure of those edges; multiple parents are allowed
// but the edge graph is kept acyclic.
//
// Unknown names are legal arguments everywhere: they are simply unrelated to
// every other name (but still subsume themselves).
class Taxonomy {
 public:
  using Edge = std::pair<std::string, std::string>;  // (child, parent)

  void add_type(const std::string& name);

  // Throws std::invalid_argument when child == parent and CycleError when
  // parent is already a subtype of child.
  void add_subclass(const std::string& child, const std::string& parent);

  bool is_subtype(std::string_view sub, std::string_view super) const;

  // Every registered name below `super`, plus `super` itself.
  std::set<std::string> subtypes_of(std::string_view super) const;
  std::set<std::string> supertypes_of(std::string_view sub) const;

  const std::set<std::string>& types() const noexcept { return types_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }
  std::set<std::string> direct_children(std::string_view parent) const;

  bool operator==(const Taxonomy&) const = default;

 private:
  std::set<std::string> types_;
  std::set<Edge> edges_;
  std::map<std::string, std::set<std::string>, std::less<>> parents_;
  std::map<std::string, std::set<std::string>, std::less<>> children_;
};

// Line-oriented format: "<child> subClassOf <parent>", '#' comments, blank
// lines ignored. Throws ParseError (with line number) or CycleError.
Taxonomy parse_taxonomy(std::string_view text);

std::string serialize_taxonomy(const Taxonomy& taxonomy);

}  // namespace fso
