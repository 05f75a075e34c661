#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fso {

inline constexpr std::string_view kServiceNamespace = "http://www.pats.ua.ac.be/AALService#";
inline constexpr std::string_view kXsdNamespace = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kLocationPredicate = "http://dbpedia.org/ontology/location";

// Naive local timestamp "YYYY-MM-DDTHH:MM:SS[.fff]". No timezone; ordering is
// the lexicographic order of the ISO text, which matches chronological order
// for this fixed-width form.
class Timestamp {
 public:
  Timestamp() = default;

  // Throws ValidationError on malformed text.
  static Timestamp parse(std::string_view iso);

  const std::string& str() const noexcept { return iso_; }

  auto operator<=>(const Timestamp&) const = default;

 private:
  explicit Timestamp(std::string iso) : iso_(std::move(iso)) {}
  std::string iso_;
};

struct LocationSpec {
  std::string place_class;  // IRI
  std::optional<std::string> located_in;  // IRI

  bool operator==(const LocationSpec&) const = default;
};

enum class Role { ProviderOnly, RequesterOnly, Mutualistic };

std::string_view to_string(Role role);

// One published provide/request record. Service types are bare names when
// they live in the service namespace (e.g. "Walking") and full IRIs otherwise.
struct ServiceDescription {
  Timestamp creation_time;
  Timestamp start_time;
  Timestamp end_time;
  std::string creator;  // IRI
  std::optional<LocationSpec> location;
  std::optional<std::string> provide;
  std::optional<std::string> request;

  bool operator==(const ServiceDescription&) const = default;
};

// Throws ValidationError if neither provide nor request is present, if
// start_time > end_time, or if a location lacks its place class.
void validate(const ServiceDescription& description);

Role classify(const ServiceDescription& description);

// Parses the closed Turtle subset used for service descriptions: @prefix
// lines followed by top-level "[ ... ] ." blocks. Throws ParseError for
// grammar violations and ValidationError for invalid records.
std::vector<ServiceDescription> parse_descriptions(std::string_view text);

// Canonical form: fixed prefix block, predicates in lexicographic order,
// two-space indentation, one predicate-object pair per line.
std::string serialize_description(const ServiceDescription& description);
std::string serialize_descriptions(std::span<const ServiceDescription> descriptions);

}  // namespace fso
