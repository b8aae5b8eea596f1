#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nanopub/error.hpp"
#include "nanopub/rdf.hpp"

namespace nanopub {

struct NamedGraph {
  std::string iri;
  std::vector<rdf::Quad> quads;
};

/// The four-graph container: head, assertion, provenance, publication info.
/// Only `assemble` produces one, so every instance satisfies the validation
/// rules below.
struct Nanopublication {
  std::string uri;
  NamedGraph head;
  NamedGraph assertion;
  NamedGraph provenance;
  NamedGraph pubinfo;

  std::size_t quad_count() const noexcept {
    return head.quads.size() + assertion.quads.size() +
           provenance.quads.size() + pubinfo.quads.size();
  }

  /// Quads in head, assertion, provenance, pubinfo order.
  rdf::QuadDocument to_document() const;
};

/// Stable rule identifiers reported by `validate`.
namespace rules {
inline constexpr std::string_view kMissingHeadLink = "missing-head-link";
inline constexpr std::string_view kDuplicateHeadLink = "duplicate-head-link";
inline constexpr std::string_view kAmbiguousHead = "ambiguous-head";
inline constexpr std::string_view kGraphCollision = "graph-collision";
inline constexpr std::string_view kUndeclaredGraph = "undeclared-graph";
inline constexpr std::string_view kEmptyAssertion = "empty-assertion";
inline constexpr std::string_view kProvenanceDetached = "provenance-detached";
inline constexpr std::string_view kPubinfoDetached = "pubinfo-detached";

inline constexpr std::string_view kAll[] = {
    kMissingHeadLink, kDuplicateHeadLink, kAmbiguousHead,      kGraphCollision,
    kUndeclaredGraph, kEmptyAssertion,    kProvenanceDetached, kPubinfoDetached};
}  // namespace rules

struct Violation {
  std::string rule;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const noexcept { return violations.empty(); }
  bool has(std::string_view rule) const noexcept;
};

/// Checks every rule and reports all violations, not just the first.
ValidationReport validate(const rdf::QuadDocument& candidate, std::string_view uri);

/// Thrown by `assemble`; code() is the first violated rule.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Routes the quads into the four graphs named by the head. Extra head
/// triples are kept; repeated quads are dropped. Throws ValidationError if
/// `validate` finds anything.
Nanopublication assemble(const rdf::QuadDocument& doc, std::string_view uri);

struct PartSizes {
  std::size_t head = 0;
  std::size_t assertion = 0;
  std::size_t provenance = 0;
  std::size_t pubinfo = 0;

  std::size_t total() const noexcept { return head + assertion + provenance + pubinfo; }
  friend bool operator==(const PartSizes&, const PartSizes&) = default;
};

PartSizes part_sizes(const Nanopublication& np);

/// The subject of the single `rdf:type np:Nanopublication` statement, if
/// exactly one distinct subject carries that type.
std::optional<std::string> find_nanopub_uri(const rdf::QuadDocument& doc);

/// Groups graph blocks of a multi-nanopublication stream into complete
/// nanopublications. A nanopublication is emitted once its head and all
/// three referenced graphs have been seen, in any order.
class NanopubSplitter {
 public:
  /// Adds one graph's quads. Returns any nanopublications completed by it;
  /// candidates that fail validation are counted and dropped.
  std::vector<Nanopublication> add_graph(const std::string& graph,
                                         std::vector<rdf::Quad> quads);

  std::size_t invalid_count() const noexcept { return invalid_; }
  /// Graphs still waiting for their head or siblings.
  std::size_t pending_graphs() const noexcept { return pending_.size(); }

 private:
  struct PendingHead {
    std::string uri;
    std::vector<std::string> parts;
  };

  void try_complete(const std::string& head_graph, std::vector<Nanopublication>& out);

  std::unordered_map<std::string, std::vector<rdf::Quad>> pending_;
  std::unordered_map<std::string, PendingHead> heads_;        // by head graph
  std::unordered_map<std::string, std::string> part_to_head_;  // part graph -> head graph
  std::size_t invalid_ = 0;
};

/// Splits a document holding many nanopublications. Throws
/// ValidationError on the first invalid one.
std::vector<Nanopublication> split_nanopubs(const rdf::QuadDocument& doc);

}  // namespace nanopub
