#include "fso/descriptions.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "fso/errors.hpp"

namespace fso {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

bool is_simple_local_name(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s.front())) || s.front() == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

bool is_iri_char(char c) {
  constexpr std::string_view forbidden = "<>\"{}|^`\\";
  return static_cast<unsigned char>(c) > 0x20 && forbidden.find(c) == std::string_view::npos;
}

enum class Tok { Iri, PName, A, PrefixKw, Literal, LBracket, RBracket, Semicolon, Dot, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;      // IRI body, literal body, or prefix for PName
  std::string local;     // PName local part
  std::string datatype;  // literal datatype token, raw ("<...>" or "p:l")
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    for (;;) {
      skip_space_and_comments();
      if (pos_ >= text_.size()) {
        tokens.push_back({Tok::End, pos_, {}, {}, {}});
        return tokens;
      }
      tokens.push_back(next());
    }
  }

  [[noreturn]] void fail(const std::string& message, std::size_t offset) const {
    throw ParseError(message, line_of(offset), offset);
  }

  std::size_t line_of(std::size_t offset) const {
    return 1 + static_cast<std::size_t>(
                   std::count(text_.begin(), text_.begin() + std::min(offset, text_.size()), '\n'));
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string read_iri() {
    std::size_t start = pos_++;
    std::string body;
    while (pos_ < text_.size() && text_[pos_] != '>') {
      if (!is_iri_char(text_[pos_])) fail("invalid character in IRI", pos_);
      body += text_[pos_++];
    }
    if (pos_ >= text_.size()) fail("unterminated IRI", start);
    ++pos_;
    return body;
  }

  // prefix:local; trailing dots belong to the statement, not the name
  std::pair<std::string, std::string> read_pname() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    if (pos_ >= text_.size() || text_[pos_] != ':') fail("expected prefixed name", start);
    std::string prefix(text_.substr(start, pos_ - start));
    ++pos_;
    std::size_t local_start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    while (pos_ > local_start && text_[pos_ - 1] == '.') --pos_;
    return {prefix, std::string(text_.substr(local_start, pos_ - local_start))};
  }

  Token next() {
    std::size_t start = pos_;
    char c = text_[pos_];
    switch (c) {
      case '[': ++pos_; return {Tok::LBracket, start, {}, {}, {}};
      case ']': ++pos_; return {Tok::RBracket, start, {}, {}, {}};
      case ';': ++pos_; return {Tok::Semicolon, start, {}, {}, {}};
      case '.': ++pos_; return {Tok::Dot, start, {}, {}, {}};
      case ',': fail("object lists (',') are not supported", start);
      case '<': return {Tok::Iri, start, read_iri(), {}, {}};
      case '"': return read_literal();
      case '@': {
        constexpr std::string_view kw = "@prefix";
        if (text_.substr(pos_, kw.size()) != kw) fail("unknown directive", start);
        pos_ += kw.size();
        return {Tok::PrefixKw, start, {}, {}, {}};
      }
      default: break;
    }
    if (c == 'a' && (pos_ + 1 == text_.size() || !(is_name_char(text_[pos_ + 1]) || text_[pos_ + 1] == ':'))) {
      ++pos_;
      return {Tok::A, start, {}, {}, {}};
    }
    if (is_name_char(c) || c == ':') {
      auto [prefix, local] = read_pname();
      return {Tok::PName, start, std::move(prefix), std::move(local), {}};
    }
    fail(std::string("unexpected character '") + c + "'", start);
  }

  Token read_literal() {
    std::size_t start = pos_++;
    std::string body;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' || text_[pos_] == '\n') fail("unsupported literal content", pos_);
      body += text_[pos_++];
    }
    if (pos_ >= text_.size()) fail("unterminated literal", start);
    ++pos_;
    Token tok{Tok::Literal, start, std::move(body), {}, {}};
    if (text_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      if (pos_ < text_.size() && text_[pos_] == '<') {
        tok.datatype = "<" + read_iri() + ">";
      } else {
        auto [prefix, local] = read_pname();
        tok.datatype = prefix + ":" + local;
      }
    }
    return tok;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Field slots while a record is being assembled.
struct Draft {
  std::optional<Timestamp> creation_time, start_time, end_time;
  std::optional<std::string> creator;
  std::optional<LocationSpec> location;
  std::optional<std::string> provide, request;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text), tokens_(lexer_.run()) {
    prefixes_["service"] = std::string(kServiceNamespace);
    prefixes_["xsd"] = std::string(kXsdNamespace);
  }

  std::vector<ServiceDescription> run() {
    std::vector<ServiceDescription> out;
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::PrefixKw) {
        prefix_declaration();
      } else if (peek().kind == Tok::LBracket) {
        out.push_back(record());
      } else {
        fail("expected @prefix or '['", peek());
      }
    }
    return out;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(index_ + ahead, tokens_.size() - 1)];
  }
  const Token& take() { return tokens_[std::min(index_++, tokens_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& message, const Token& at) const {
    lexer_.fail(message, at.offset);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what, peek());
    return take();
  }

  static bool is_term(Tok kind) { return kind == Tok::Iri || kind == Tok::PName; }

  void prefix_declaration() {
    take();
    const auto& name = expect(Tok::PName, "prefix name");
    if (!name.local.empty()) fail("prefix name must end with ':'", name);
    const auto& iri = expect(Tok::Iri, "namespace IRI");
    expect(Tok::Dot, "'.' after @prefix");
    prefixes_[name.text] = iri.text;
  }

  std::string expand(const Token& tok) const {
    if (tok.kind == Tok::Iri) return tok.text;
    auto it = prefixes_.find(tok.text);
    if (it == prefixes_.end()) fail("undeclared prefix '" + tok.text + ":'", tok);
    return it->second + tok.local;
  }

  const std::string& service_ns() const { return prefixes_.at("service"); }

  std::string type_name(const Token& tok) const {
    auto iri = expand(tok);
    const auto& ns = service_ns();
    if (iri.size() > ns.size() && iri.compare(0, ns.size(), ns) == 0) {
      auto local = iri.substr(ns.size());
      if (is_simple_local_name(local)) return local;
    }
    return iri;
  }

  Timestamp timestamp(const Token& tok) const {
    if (tok.kind != Tok::Literal) fail("expected a dateTime literal", tok);
    if (tok.datatype.empty()) fail("dateTime literal needs ^^xsd:dateTime", tok);
    std::string datatype;
    if (tok.datatype.front() == '<') {
      datatype = tok.datatype.substr(1, tok.datatype.size() - 2);
    } else {
      auto colon = tok.datatype.find(':');
      auto it = prefixes_.find(tok.datatype.substr(0, colon));
      if (it == prefixes_.end()) fail("undeclared datatype prefix", tok);
      datatype = it->second + tok.datatype.substr(colon + 1);
    }
    if (datatype != std::string(kXsdNamespace) + "dateTime") {
      fail("only xsd:dateTime literals are supported", tok);
    }
    try {
      return Timestamp::parse(tok.text);
    } catch (const ValidationError& e) {
      fail(e.what(), tok);
    }
  }

  template <typename T>
  void assign_once(std::optional<T>& slot, T value, const Token& at, std::string_view name) {
    if (slot) fail("duplicate predicate " + std::string(name), at);
    slot = std::move(value);
  }

  ServiceDescription record() {
    take();  // '['
    Draft draft;

    // "[ a" with no type object: the "a" is dangling and dropped.
    // "[ a <Type> ;" declares a record type, which carries no field.
    if (peek().kind == Tok::A) {
      take();
      if (is_term(peek().kind) &&
          (peek(1).kind == Tok::Semicolon || peek(1).kind == Tok::RBracket)) {
        take();
        if (peek().kind == Tok::Semicolon) take();
      }
    }

    while (peek().kind != Tok::RBracket) {
      const auto& pred_tok = peek();
      if (!is_term(pred_tok.kind)) fail("expected a predicate", pred_tok);
      take();
      auto pred = expand(pred_tok);
      const auto& ns = service_ns();
      std::string local = pred.compare(0, ns.size(), ns) == 0 ? pred.substr(ns.size()) : "";

      if (local == "creationTime") {
        assign_once(draft.creation_time, timestamp(take()), pred_tok, local);
      } else if (local == "startTime") {
        assign_once(draft.start_time, timestamp(take()), pred_tok, local);
      } else if (local == "endTime") {
        assign_once(draft.end_time, timestamp(take()), pred_tok, local);
      } else if (local == "hasCreator") {
        const auto& obj = peek();
        if (!is_term(obj.kind)) fail("hasCreator expects an IRI", obj);
        take();
        assign_once(draft.creator, expand(obj), pred_tok, local);
      } else if (local == "hasServiceLocation") {
        assign_once(draft.location, location(), pred_tok, local);
      } else if (local == "provide" || local == "request") {
        const auto& obj = peek();
        if (!is_term(obj.kind)) fail(local + " expects a service type", obj);
        take();
        assign_once(local == "provide" ? draft.provide : draft.request, type_name(obj), pred_tok,
                    local);
      } else {
        fail("unrecognized predicate <" + pred + ">", pred_tok);
      }

      if (peek().kind == Tok::Semicolon) {
        take();
      } else if (peek().kind != Tok::RBracket) {
        fail("expected ';' or ']'", peek());
      }
    }
    const auto& close = take();
    expect(Tok::Dot, "'.' after record");
    return finish(std::move(draft), close);
  }

  LocationSpec location() {
    const auto& open = expect(Tok::LBracket, "'[' for location");
    std::vector<std::vector<Token>> items;
    items.emplace_back();
    while (peek().kind != Tok::RBracket) {
      const auto& tok = peek();
      if (tok.kind == Tok::Semicolon) {
        take();
        items.emplace_back();
      } else if (is_term(tok.kind) || tok.kind == Tok::A) {
        items.back().push_back(take());
      } else {
        fail("unexpected token in location block", tok);
      }
    }
    take();
    if (items.back().empty()) items.pop_back();

    std::optional<std::string> place_class;
    std::optional<std::string> located_in;
    for (std::size_t i = 0; i < items.size(); ++i) {
      const auto& item = items[i];
      if (item.empty()) fail("empty location item", open);
      if (item[0].kind == Tok::A) {
        if (item.size() != 2 || item[1].kind == Tok::A) fail("expected 'a <Class>'", item[0]);
        assign_once(place_class, expand(item[1]), item[0], "a");
        continue;
      }
      if (item.size() > 2 || item[0].kind == Tok::A ||
          (item.size() == 2 && item[1].kind == Tok::A)) {
        fail("malformed location item", item[0]);
      }
      if (expand(item[0]) != kLocationPredicate) {
        fail("unrecognized location predicate", item[0]);
      }
      if (item.size() == 2) {
        assign_once(located_in, expand(item[1]), item[0], "location");
      } else {
        // Split layout: the predicate and the place sit in separate items.
        if (i + 1 >= items.size() || items[i + 1].size() != 1 || items[i + 1][0].kind == Tok::A) {
          fail("location predicate without a place", item[0]);
        }
        assign_once(located_in, expand(items[i + 1][0]), item[0], "location");
        ++i;
      }
    }
    if (!place_class) {
      throw ValidationError("line " + std::to_string(lexer_.line_of(open.offset)) +
                            ": location block has no place class");
    }
    return LocationSpec{*place_class, located_in};
  }

  ServiceDescription finish(Draft draft, const Token& at) const {
    auto where = "record ending at line " + std::to_string(lexer_.line_of(at.offset)) + ": ";
    auto require = [&](auto& slot, const char* name) {
      if (!slot) throw ValidationError(where + "missing service:" + name);
      return std::move(*slot);
    };
    ServiceDescription d{
        require(draft.creation_time, "creationTime"),
        require(draft.start_time, "startTime"),
        require(draft.end_time, "endTime"),
        require(draft.creator, "hasCreator"),
        std::move(draft.location),
        std::move(draft.provide),
        std::move(draft.request),
    };
    try {
      validate(d);
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
    return d;
  }

  Lexer lexer_;
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  std::map<std::string, std::string> prefixes_;
};

std::string format_type(const std::string& name) {
  return is_simple_local_name(name) ? "service:" + name : "<" + name + ">";
}

std::string format_timestamp(const Timestamp& t) { return "\"" + t.str() + "\"^^xsd:dateTime"; }

void append_block(std::string& out, const ServiceDescription& d) {
  // Predicates in lexicographic order of their local names.
  std::vector<std::pair<std::string, std::string>> lines;
  lines.emplace_back("service:creationTime", format_timestamp(d.creation_time));
  lines.emplace_back("service:endTime", format_timestamp(d.end_time));
  lines.emplace_back("service:hasCreator", "<" + d.creator + ">");
  if (d.location) {
    std::string loc = "[ a <" + d.location->place_class + ">";
    if (d.location->located_in) {
      loc += " ; <" + std::string(kLocationPredicate) + "> <" + *d.location->located_in + ">";
    }
    loc += " ]";
    lines.emplace_back("service:hasServiceLocation", loc);
  }
  if (d.provide) lines.emplace_back("service:provide", format_type(*d.provide));
  if (d.request) lines.emplace_back("service:request", format_type(*d.request));
  lines.emplace_back("service:startTime", format_timestamp(d.start_time));

  out += "[\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out += "  " + lines[i].first + " " + lines[i].second;
    out += i + 1 < lines.size() ? " ;\n" : "\n";
  }
  out += "] .\n";
}

std::string prefix_block() {
  return "@prefix service: <" + std::string(kServiceNamespace) + "> .\n" + "@prefix xsd: <" +
         std::string(kXsdNamespace) + "> .\n";
}

}  // namespace

Timestamp Timestamp::parse(std::string_view iso) {
  auto bad = [&] { return ValidationError("malformed timestamp \"" + std::string(iso) + "\""); };
  if (iso.size() < 19) throw bad();
  constexpr std::string_view shape = "dddd-dd-ddTdd:dd:dd";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (shape[i] == 'd' ? !is_digit(iso[i]) : iso[i] != shape[i]) throw bad();
  }
  if (iso.size() > 19) {
    if (iso[19] != '.' || iso.size() == 20) throw bad();
    if (!std::all_of(iso.begin() + 20, iso.end(), is_digit)) throw bad();
  }
  auto field = [&](std::size_t at, std::size_t len) {
    int v = 0;
    for (std::size_t i = at; i < at + len; ++i) v = v * 10 + (iso[i] - '0');
    return v;
  };
  int month = field(5, 2), day = field(8, 2), hour = field(11, 2), minute = field(14, 2),
      second = field(17, 2);
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 60) {
    throw bad();
  }
  return Timestamp(std::string(iso));
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::ProviderOnly: return "provider";
    case Role::RequesterOnly: return "requester";
    case Role::Mutualistic: return "mutualistic";
  }
  return "unknown";
}

void validate(const ServiceDescription& d) {
  if (!d.provide && !d.request) {
    throw ValidationError("description has neither service:provide nor service:request");
  }
  if (d.start_time > d.end_time) {
    throw ValidationError("startTime " + d.start_time.str() + " is after endTime " +
                          d.end_time.str());
  }
  if (d.location && d.location->place_class.empty()) {
    throw ValidationError("location has no place class");
  }
  if (d.creator.empty()) throw ValidationError("description has no creator");
}

Role classify(const ServiceDescription& d) {
  if (d.provide && d.request) return Role::Mutualistic;
  return d.provide ? Role::ProviderOnly : Role::RequesterOnly;
}

std::vector<ServiceDescription> parse_descriptions(std::string_view text) {
  return Parser(text).run();
}

std::string serialize_description(const ServiceDescription& d) {
  std::string out = prefix_block() + "\n";
  append_block(out, d);
  return out;
}

std::string serialize_descriptions(std::span<const ServiceDescription> descriptions) {
  std::string out = prefix_block();
  for (const auto& d : descriptions) {
    out += "\n";
    append_block(out, d);
  }
  return out;
}

}  // namespace fso
