#include "nanopub/trusty.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <stdexcept>

#include "nanopub/error.hpp"

namespace nanopub::trusty {

using rdf::Quad;
using rdf::QuadDocument;
using rdf::Term;

namespace {

constexpr std::string_view kAlphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";

bool in_alphabet(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '-' || c == '_';
}

bool starts_with_code(std::string_view text) {
  return text.size() >= kCodeLength &&
         ArtifactCode::is_well_formed(text.substr(0, kCodeLength));
}

template <typename F>
Term map_iri(const Term& t, F&& f) {
  if (!t.is_iri()) return t;
  std::string mapped = f(t.value());
  if (mapped == t.value()) return t;
  return Term::iri(std::move(mapped));
}

template <typename F>
QuadDocument map_iris(const QuadDocument& doc, F&& f) {
  QuadDocument out;
  out.prefixes = doc.prefixes;
  out.quads.reserve(doc.quads.size());
  for (const Quad& q : doc.quads) {
    out.quads.emplace_back(map_iri(q.subject, f), map_iri(q.predicate, f),
                           map_iri(q.object, f), map_iri(q.graph, f));
  }
  return out;
}

std::string blank_self(std::string_view iri, std::string_view base,
                       const std::optional<ArtifactCode>& code) {
  if (code && iri.starts_with(base) &&
      iri.substr(base.size()).starts_with(code->str())) {
    std::string out(base);
    out += iri.substr(base.size() + kCodeLength);
    return out;
  }
  return std::string(iri);
}

std::string code_for(std::string_view canonical) {
  auto digest = sha256(canonical);
  return std::string(kModulePrefix) + encode_digest(digest);
}

}  // namespace

bool ArtifactCode::is_well_formed(std::string_view text) noexcept {
  return text.size() == kCodeLength && text.starts_with(kModulePrefix) &&
         std::all_of(text.begin() + 2, text.end(), in_alphabet);
}

std::optional<ArtifactCode> ArtifactCode::parse(std::string_view text) {
  if (!is_well_formed(text)) return std::nullopt;
  return ArtifactCode(std::string(text));
}

bool is_valid_base(std::string_view base) noexcept {
  return !base.empty() && (base.back() == '/' || base.back() == '#' || base.back() == '.') &&
         rdf::is_absolute_iri(base);
}

std::optional<TrustyUri> TrustyUri::parse(std::string_view uri) {
  auto code = extract_artifact_code(uri);
  if (!code) return std::nullopt;
  std::string_view base = uri.substr(0, uri.size() - kCodeLength);
  if (!is_valid_base(base)) return std::nullopt;
  return TrustyUri{std::string(base), *code};
}

std::optional<ArtifactCode> extract_artifact_code(std::string_view uri) {
  if (uri.size() <= kCodeLength) return std::nullopt;
  char sep = uri[uri.size() - kCodeLength - 1];
  if (sep != '/' && sep != '#' && sep != '.') return std::nullopt;
  return ArtifactCode::parse(uri.substr(uri.size() - kCodeLength));
}

std::string encode_digest(std::span<const std::uint8_t, 32> digest) {
  auto bit = [&](std::size_t padded_index) -> unsigned {
    if (padded_index < 2) return 0;
    std::size_t i = padded_index - 2;
    return (digest[i / 8] >> (7 - i % 8)) & 1u;
  };
  std::string out;
  out.reserve(43);
  for (std::size_t group = 0; group < 43; ++group) {
    unsigned value = 0;
    for (std::size_t b = 0; b < 6; ++b) value = (value << 1) | bit(group * 6 + b);
    out += kAlphabet[value];
  }
  return out;
}

std::array<std::uint8_t, 32> sha256(std::string_view data) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  return out;
}

std::string canonical_form(const QuadDocument& doc, std::string_view base,
                           const std::optional<ArtifactCode>& self_code) {
  auto render = [&](const Term& t) {
    if (t.is_iri()) return "<" + blank_self(t.value(), base, self_code) + ">";
    return rdf::to_ntriples(t);
  };
  std::vector<std::string> lines;
  lines.reserve(doc.quads.size());
  for (const Quad& q : doc.quads) {
    lines.push_back(render(q.subject) + ' ' + render(q.predicate) + ' ' +
                    render(q.object) + ' ' + render(q.graph) + " .");
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

MintResult mint(const QuadDocument& doc, std::string_view base) {
  if (!is_valid_base(base)) {
    throw Error("invalid-base",
                "base IRI must be absolute and end in '/', '#' or '.': " + std::string(base));
  }
  auto code = ArtifactCode::parse(code_for(canonical_form(doc, base)));
  QuadDocument rewritten = map_iris(doc, [&](const std::string& iri) {
    if (!iri.starts_with(base)) return iri;
    std::string_view rest = std::string_view(iri).substr(base.size());
    if (starts_with_code(rest)) return iri;
    return std::string(base) + code->str() + std::string(rest);
  });
  return {TrustyUri{std::string(base), *code}, std::move(rewritten)};
}

Verification verify(const QuadDocument& doc, const TrustyUri& uri) {
  if (!is_valid_base(uri.base)) return {false, "invalid base IRI"};
  for (const Quad& q : doc.quads) {
    for (const Term* t : {&q.subject, &q.predicate, &q.object, &q.graph}) {
      if (!t->is_iri() || !t->value().starts_with(uri.base)) continue;
      if (!starts_with_code(std::string_view(t->value()).substr(uri.base.size()))) {
        return {false, "unminted self-reference <" + t->value() + ">"};
      }
    }
  }
  std::string recomputed = code_for(canonical_form(doc, uri.base, uri.code));
  if (recomputed != uri.code.str()) {
    return {false, "content hash " + recomputed + " does not match " + uri.code.str()};
  }
  return {true, {}};
}

QuadDocument strip_code(const QuadDocument& doc, const TrustyUri& uri) {
  return map_iris(doc, [&](const std::string& iri) {
    return blank_self(iri, uri.base, uri.code);
  });
}

std::vector<Verification> verify_all(std::span<const QuadDocument> docs,
                                     std::span<const TrustyUri> uris) {
  if (docs.size() != uris.size()) {
    throw std::invalid_argument("verify_all: docs and uris differ in length");
  }
  std::vector<Verification> out(docs.size());
  const auto n = static_cast<std::ptrdiff_t>(docs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        verify(docs[static_cast<std::size_t>(i)], uris[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace nanopub::trusty
