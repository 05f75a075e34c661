#include "fso/taxonomy.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#include "fso/errors.hpp"

namespace fso {

namespace {

using Adjacency = std::map<std::string, std::set<std::string>, std::less<>>;

std::set<std::string> reachable(const Adjacency& adjacency, std::string_view start) {
  std::set<std::string> seen{std::string(start)};
  std::vector<std::string> stack{std::string(start)};
  while (!stack.empty()) {
    auto current = std::move(stack.back());
    stack.pop_back();
    auto it = adjacency.find(current);
    if (it == adjacency.end()) continue;
    for (const auto& next : it->second) {
      if (seen.insert(next).second) stack.push_back(next);
    }
  }
  return seen;
}

}  // namespace

void Taxonomy::add_type(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty type name");
  types_.insert(name);
}

void Taxonomy::add_subclass(const std::string& child, const std::string& parent) {
  if (child == parent) {
    throw std::invalid_argument("a type cannot be declared a subclass of itself: " + child);
  }
  if (is_subtype(parent, child)) {
    throw CycleError("edge " + child + " subClassOf " + parent + " would create a cycle");
  }
  add_type(child);
  add_type(parent);
  edges_.emplace(child, parent);
  parents_[child].insert(parent);
  children_[parent].insert(child);
}

bool Taxonomy::is_subtype(std::string_view sub, std::string_view super) const {
  if (sub == super) return true;
  std::set<std::string, std::less<>> seen;
  std::vector<std::string_view> stack{sub};
  while (!stack.empty()) {
    auto current = stack.back();
    stack.pop_back();
    auto it = parents_.find(current);
    if (it == parents_.end()) continue;
    for (const auto& parent : it->second) {
      if (parent == super) return true;
      if (seen.insert(parent).second) stack.push_back(parent);
    }
  }
  return false;
}

std::set<std::string> Taxonomy::subtypes_of(std::string_view super) const {
  return reachable(children_, super);
}

std::set<std::string> Taxonomy::supertypes_of(std::string_view sub) const {
  return reachable(parents_, sub);
}

std::set<std::string> Taxonomy::direct_children(std::string_view parent) const {
  auto it = children_.find(parent);
  return it == children_.end() ? std::set<std::string>{} : it->second;
}

Taxonomy parse_taxonomy(std::string_view text) {
  Taxonomy taxonomy;
  std::size_t line_no = 0;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    auto end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(offset, end - offset);
    ++line_no;

    std::istringstream in{std::string(line)};
    std::vector<std::string> words;
    for (std::string word; in >> word;) words.push_back(word);

    if (!words.empty() && words.front().front() != '#') {
      if (words.size() != 3 || words[1] != "subClassOf") {
        throw ParseError("expected \"<child> subClassOf <parent>\"", line_no, offset);
      }
      if (words[0] == words[2]) {
        throw ParseError("type declared a subclass of itself: " + words[0], line_no, offset);
      }
      try {
        taxonomy.add_subclass(words[0], words[2]);
      } catch (const CycleError& e) {
        throw CycleError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (end == text.size()) break;
    offset = end + 1;
  }
  return taxonomy;
}

std::string serialize_taxonomy(const Taxonomy& taxonomy) {
  std::string out;
  for (const auto& [child, parent] : taxonomy.edges()) {
    out += child + " subClassOf " + parent + "\n";
  }
  return out;
}

}  // namespace fso
