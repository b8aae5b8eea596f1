#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nanopub/rdf.hpp"

namespace nanopub::trusty {

inline constexpr std::size_t kCodeLength = 45;
inline constexpr std::string_view kModulePrefix = "RA";

/// "RA" followed by 43 characters from A-Z a-z 0-9 - _.
class ArtifactCode {
 public:
  static bool is_well_formed(std::string_view text) noexcept;
  static std::optional<ArtifactCode> parse(std::string_view text);

  const std::string& str() const noexcept { return text_; }

  friend bool operator==(const ArtifactCode&, const ArtifactCode&) = default;
  friend auto operator<=>(const ArtifactCode&, const ArtifactCode&) = default;

 private:
  explicit ArtifactCode(std::string text) : text_(std::move(text)) {}
  std::string text_;
};

struct ArtifactCodeHash {
  std::size_t operator()(const ArtifactCode& c) const noexcept {
    return std::hash<std::string>{}(c.str());
  }
};

/// True if `base` ends in '/', '#' or '.'.
bool is_valid_base(std::string_view base) noexcept;

/// Base IRI immediately followed by the artifact code.
struct TrustyUri {
  std::string base;
  ArtifactCode code;

  std::string str() const { return base + code.str(); }

  /// Splits an IRI that ends in a well-formed code preceded by a valid base.
  static std::optional<TrustyUri> parse(std::string_view uri);
};

/// Trailing code of `uri`, if it ends in one (after '/', '#' or '.').
std::optional<ArtifactCode> extract_artifact_code(std::string_view uri);

/// Maps a SHA-256 digest, left-padded with two zero bits to 258 bits, onto
/// 43 six-bit groups over A-Z a-z 0-9 - _.
std::string encode_digest(std::span<const std::uint8_t, 32> digest);

std::array<std::uint8_t, 32> sha256(std::string_view data);

/// Sorted N-Quads-style lines, one per quad, with a trailing newline.
/// Occurrences of `base + self_code` inside IRIs are replaced by `base`.
/// Without `self_code` (an unminted document) IRIs are rendered unchanged.
std::string canonical_form(const rdf::QuadDocument& doc, std::string_view base,
                           const std::optional<ArtifactCode>& self_code = std::nullopt);

struct MintResult {
  TrustyUri uri;
  rdf::QuadDocument document;
};

/// Hashes the canonical form of an unminted document and rewrites every IRI
/// that starts with `base` (and is not already followed by a code) to carry
/// the new code right after `base`. Throws Error("invalid-base").
MintResult mint(const rdf::QuadDocument& doc, std::string_view base);

/// Outcome of `verify`; `reason` is empty on success.
struct Verification {
  bool ok = false;
  std::string reason;
  explicit operator bool() const noexcept { return ok; }
};

/// True iff re-minting `doc` against uri.base reproduces uri.code.
Verification verify(const rdf::QuadDocument& doc, const TrustyUri& uri);

/// Reverses minting: `base + code` becomes `base` wherever it occurs.
rdf::QuadDocument strip_code(const rdf::QuadDocument& doc, const TrustyUri& uri);

/// Parallel batch verification (OpenMP when available). Element i is the
/// result for docs[i] against uris[i].
std::vector<Verification> verify_all(std::span<const rdf::QuadDocument> docs,
                                     std::span<const TrustyUri> uris);

}  // namespace nanopub::trusty
