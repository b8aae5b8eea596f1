#include "nanopub/rdf.hpp"

#include <algorithm>
#include <cstdio>

#include "nanopub/error.hpp"

namespace nanopub::rdf {

namespace {

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool forbidden_in_iri(unsigned char c) {
  if (c <= 0x20) return true;
  switch (c) {
    case '<': case '>': case '"': case '{': case '}':
    case '|': case '^': case '`': case '\\':
      return true;
    default:
      return false;
  }
}

void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

bool is_absolute_iri(std::string_view text) {
  if (text.empty() || !is_alpha(text.front())) return false;
  std::size_t i = 1;
  while (i < text.size() && (is_alpha(text[i]) || is_digit(text[i]) ||
                             text[i] == '+' || text[i] == '-' || text[i] == '.')) {
    ++i;
  }
  if (i >= text.size() || text[i] != ':') return false;
  return std::none_of(text.begin(), text.end(), [](char c) {
    return forbidden_in_iri(static_cast<unsigned char>(c));
  });
}

Term Term::iri(std::string value) {
  if (!is_absolute_iri(value)) {
    bool has_scheme = value.find(':') != std::string::npos;
    throw Error(has_scheme ? "invalid-iri" : "relative-iri",
                "not an absolute IRI: <" + value + ">");
  }
  return Term(TermKind::Iri, std::move(value), {}, {});
}

Term Term::literal(std::string lexical, std::string datatype,
                   std::string language) {
  if (!datatype.empty() && !language.empty()) {
    throw Error("invalid-literal",
                "literal cannot carry both a datatype and a language tag");
  }
  if (!datatype.empty() && !is_absolute_iri(datatype)) {
    throw Error("invalid-iri", "datatype is not an absolute IRI: " + datatype);
  }
  // Tags compare case-insensitively; one spelling keeps hashes stable.
  for (char& c : language) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return Term(TermKind::Literal, std::move(lexical), std::move(datatype),
              std::move(language));
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  std::size_t seed = std::hash<std::string>{}(t.value());
  hash_combine(seed, static_cast<std::size_t>(t.kind()));
  if (t.is_literal()) {
    hash_combine(seed, std::hash<std::string>{}(t.datatype()));
    hash_combine(seed, std::hash<std::string>{}(t.language()));
  }
  return seed;
}

std::string escape_string(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: {
        auto u = static_cast<unsigned char>(c);
        if (u < 0x20 || u == 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", u);
          out += buf;
        } else {
          out += c;
        }
      }
    }
  }
  return out;
}

std::string to_ntriples(const Term& term) {
  if (term.is_iri()) return "<" + term.value() + ">";
  std::string out = "\"" + escape_string(term.value()) + "\"";
  if (!term.language().empty()) {
    out += "@" + term.language();
  } else if (!term.datatype().empty()) {
    out += "^^<" + term.datatype() + ">";
  }
  return out;
}

Quad::Quad(Term s, Term p, Term o, Term g)
    : subject(std::move(s)),
      predicate(std::move(p)),
      object(std::move(o)),
      graph(std::move(g)) {
  if (!subject.is_iri() || !predicate.is_iri() || !graph.is_iri()) {
    throw Error("invalid-quad",
                "subject, predicate and graph of a quad must be IRIs");
  }
}

std::size_t QuadHash::operator()(const Quad& q) const noexcept {
  TermHash h;
  std::size_t seed = h(q.subject);
  hash_combine(seed, h(q.predicate));
  hash_combine(seed, h(q.object));
  hash_combine(seed, h(q.graph));
  return seed;
}

void QuadDocument::add_prefix(std::string label, std::string iri) {
  for (auto& [l, i] : prefixes) {
    if (l == label) {
      i = std::move(iri);
      return;
    }
  }
  prefixes.emplace_back(std::move(label), std::move(iri));
}

QuadSet quad_set(const QuadDocument& doc) {
  return QuadSet(doc.quads.begin(), doc.quads.end());
}

bool operator==(const QuadDocument& a, const QuadDocument& b) {
  return quad_set(a) == quad_set(b);
}

bool QuadPattern::matches(const Quad& q) const noexcept {
  return (!subject || *subject == q.subject) &&
         (!predicate || *predicate == q.predicate) &&
         (!object || *object == q.object) && (!graph || *graph == q.graph);
}

std::vector<Quad> match(const QuadDocument& doc, const QuadPattern& pattern) {
  std::vector<Quad> out;
  std::copy_if(doc.quads.begin(), doc.quads.end(), std::back_inserter(out),
               [&](const Quad& q) { return pattern.matches(q); });
  return out;
}

}  // namespace nanopub::rdf
