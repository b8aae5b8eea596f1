#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace nanopub::rdf {

enum class TermKind : std::uint8_t { Iri, Literal };

/// True if `text` starts with a URI scheme followed by ':' and contains no
/// characters forbidden inside an IRIREF.
bool is_absolute_iri(std::string_view text);

/// An IRI or a literal. Blank nodes are deliberately not representable.
class Term {
 public:
  /// Throws nanopub::Error("relative-iri" / "invalid-iri") if `value` is
  /// not an absolute IRI.
  static Term iri(std::string value);

  /// A literal with either a datatype IRI or a language tag (or neither).
  /// Language tags are stored lowercased.
  static Term literal(std::string lexical, std::string datatype = {},
                      std::string language = {});

  TermKind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == TermKind::Iri; }
  bool is_literal() const noexcept { return kind_ == TermKind::Literal; }

  const std::string& value() const noexcept { return value_; }
  const std::string& datatype() const noexcept { return datatype_; }
  const std::string& language() const noexcept { return language_; }

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term&, const Term&) = default;

 private:
  Term(TermKind kind, std::string value, std::string datatype,
       std::string language)
      : kind_(kind),
        value_(std::move(value)),
        datatype_(std::move(datatype)),
        language_(std::move(language)) {}

  TermKind kind_;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

/// Escapes a literal's lexical form for a double-quoted TriG/N-Quads string.
std::string escape_string(std::string_view text);

/// `<iri>`, `"lex"`, `"lex"^^<dt>` or `"lex"@lang`.
std::string to_ntriples(const Term& term);

struct Quad {
  Term subject;
  Term predicate;
  Term object;
  Term graph;

  /// Throws if subject, predicate or graph is a literal.
  Quad(Term s, Term p, Term o, Term g);

  friend bool operator==(const Quad&, const Quad&) = default;
  friend std::strong_ordering operator<=>(const Quad&, const Quad&) = default;
};

struct QuadHash {
  std::size_t operator()(const Quad& q) const noexcept;
};

using QuadSet = std::unordered_set<Quad, QuadHash>;

/// Ordered quads plus a prefix table. The prefix table is presentation only;
/// equality compares quad sets.
struct QuadDocument {
  std::vector<Quad> quads;
  std::vector<std::pair<std::string, std::string>> prefixes;

  std::size_t size() const noexcept { return quads.size(); }
  bool empty() const noexcept { return quads.empty(); }

  void add_prefix(std::string label, std::string iri);
};

QuadSet quad_set(const QuadDocument& doc);
bool operator==(const QuadDocument& a, const QuadDocument& b);

/// Each position is either a fixed term or a wildcard (nullopt).
struct QuadPattern {
  std::optional<Term> subject;
  std::optional<Term> predicate;
  std::optional<Term> object;
  std::optional<Term> graph;

  bool matches(const Quad& q) const noexcept;
  bool is_wildcard() const noexcept {
    return !subject && !predicate && !object && !graph;
  }
};

std::vector<Quad> match(const QuadDocument& doc, const QuadPattern& pattern);

}  // namespace nanopub::rdf
