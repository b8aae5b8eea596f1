#include "nanopub/model.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "nanopub/vocab.hpp"

namespace nanopub {

using rdf::Quad;
using rdf::QuadDocument;
using rdf::Term;

namespace {

struct HeadLinks {
  std::string graph;
  bool typed = false;
  std::vector<const Term*> assertion;
  std::vector<const Term*> provenance;
  std::vector<const Term*> pubinfo;
};

bool is_head_statement(const Quad& q, std::string_view uri) {
  if (!q.subject.is_iri() || q.subject.value() != uri) return false;
  const std::string& p = q.predicate.value();
  if (p == vocab::kRdfType) {
    return q.object.is_iri() && q.object.value() == vocab::kNanopublication;
  }
  return p == vocab::kHasAssertion || p == vocab::kHasProvenance ||
         p == vocab::kHasPublicationInfo;
}

void add(ValidationReport& r, std::string_view rule, std::string message) {
  r.violations.push_back({std::string(rule), std::move(message)});
}

// Resolves one head link to a graph IRI, reporting missing or duplicate links.
std::optional<std::string> resolve_link(ValidationReport& report,
                                        const std::vector<const Term*>& objects,
                                        std::string_view name) {
  std::set<std::string> iris;
  bool literal = false;
  for (const Term* t : objects) {
    if (t->is_iri()) {
      iris.insert(t->value());
    } else {
      literal = true;
    }
  }
  if (iris.empty()) {
    add(report, rules::kMissingHeadLink,
        literal ? std::string(name) + " points to a literal, not a graph IRI"
                : "head has no " + std::string(name) + " link");
    return std::nullopt;
  }
  if (iris.size() > 1 || literal) {
    add(report, rules::kDuplicateHeadLink,
        "head has " + std::to_string(objects.size()) + " " + std::string(name) + " links");
    return std::nullopt;
  }
  return *iris.begin();
}

struct Resolved {
  std::string head;
  std::optional<std::string> assertion, provenance, pubinfo;
};

// Runs the full rule set; `resolved` is filled when the head was found.
ValidationReport check(const QuadDocument& doc, std::string_view uri,
                       std::optional<Resolved>* resolved) {
  ValidationReport report;

  std::vector<HeadLinks> candidates;
  for (const Quad& q : doc.quads) {
    if (!is_head_statement(q, uri)) continue;
    auto it = std::find_if(candidates.begin(), candidates.end(),
                           [&](const HeadLinks& h) { return h.graph == q.graph.value(); });
    if (it == candidates.end()) {
      candidates.push_back(HeadLinks{q.graph.value(), false, {}, {}, {}});
      it = std::prev(candidates.end());
    }
    const std::string& p = q.predicate.value();
    if (p == vocab::kRdfType) it->typed = true;
    else if (p == vocab::kHasAssertion) it->assertion.push_back(&q.object);
    else if (p == vocab::kHasProvenance) it->provenance.push_back(&q.object);
    else it->pubinfo.push_back(&q.object);
  }

  if (candidates.empty()) {
    add(report, rules::kMissingHeadLink,
        "no graph declares <" + std::string(uri) + "> as a nanopublication");
    return report;
  }
  if (candidates.size() > 1) {
    add(report, rules::kAmbiguousHead,
        std::to_string(candidates.size()) + " graphs carry head statements for <" +
            std::string(uri) + ">");
  }
  auto head_it = std::find_if(candidates.begin(), candidates.end(),
                              [](const HeadLinks& h) { return h.typed; });
  const HeadLinks& head = head_it != candidates.end() ? *head_it : candidates.front();

  if (!head.typed) {
    add(report, rules::kMissingHeadLink, "head lacks rdf:type np:Nanopublication");
  }
  Resolved r{head.graph,
             resolve_link(report, head.assertion, "np:hasAssertion"),
             resolve_link(report, head.provenance, "np:hasProvenance"),
             resolve_link(report, head.pubinfo, "np:hasPublicationInfo")};

  std::vector<std::string> declared{r.head};
  for (const auto* g : {&r.assertion, &r.provenance, &r.pubinfo}) {
    if (*g) declared.push_back(**g);
  }
  std::set<std::string> distinct(declared.begin(), declared.end());
  if (distinct.size() != declared.size()) {
    add(report, rules::kGraphCollision, "the four graph IRIs are not pairwise distinct");
  }

  std::set<std::string> undeclared;
  for (const Quad& q : doc.quads) {
    if (!distinct.contains(q.graph.value())) undeclared.insert(q.graph.value());
  }
  for (const auto& g : undeclared) {
    add(report, rules::kUndeclaredGraph, "quads in undeclared graph <" + g + ">");
  }

  auto graph_has = [&](const std::string& graph, auto pred) {
    return std::any_of(doc.quads.begin(), doc.quads.end(), [&](const Quad& q) {
      return q.graph.value() == graph && pred(q);
    });
  };
  if (r.assertion && !graph_has(*r.assertion, [](const Quad&) { return true; })) {
    add(report, rules::kEmptyAssertion, "assertion graph <" + *r.assertion + "> is empty");
  }
  if (r.provenance && r.assertion &&
      !graph_has(*r.provenance, [&](const Quad& q) { return q.subject.value() == *r.assertion; })) {
    add(report, rules::kProvenanceDetached,
        "no provenance statement has the assertion graph as subject");
  }
  if (r.pubinfo &&
      !graph_has(*r.pubinfo, [&](const Quad& q) { return q.subject.value() == uri; })) {
    add(report, rules::kPubinfoDetached,
        "no publication info statement has the nanopublication as subject");
  }

  if (resolved) *resolved = std::move(r);
  return report;
}

}  // namespace

rdf::QuadDocument Nanopublication::to_document() const {
  QuadDocument doc;
  doc.quads.reserve(quad_count());
  for (const NamedGraph* g : {&head, &assertion, &provenance, &pubinfo}) {
    doc.quads.insert(doc.quads.end(), g->quads.begin(), g->quads.end());
  }
  return doc;
}

bool ValidationReport::has(std::string_view rule) const noexcept {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

ValidationReport validate(const QuadDocument& candidate, std::string_view uri) {
  return check(candidate, uri, nullptr);
}

ValidationError::ValidationError(ValidationReport report)
    : Error(report.violations.empty() ? "invalid" : report.violations.front().rule,
            report.violations.empty() ? "invalid nanopublication"
                                      : report.violations.front().message),
      report_(std::move(report)) {}

Nanopublication assemble(const QuadDocument& doc, std::string_view uri) {
  std::optional<Resolved> resolved;
  ValidationReport report = check(doc, uri, &resolved);
  if (!report.valid()) throw ValidationError(std::move(report));

  Nanopublication np;
  np.uri = std::string(uri);
  np.head.iri = resolved->head;
  np.assertion.iri = *resolved->assertion;
  np.provenance.iri = *resolved->provenance;
  np.pubinfo.iri = *resolved->pubinfo;
  // A graph is a set: repeated statements collapse to their first occurrence.
  rdf::QuadSet seen;
  for (const Quad& q : doc.quads) {
    if (!seen.insert(q).second) continue;
    const std::string& g = q.graph.value();
    if (g == np.head.iri) np.head.quads.push_back(q);
    else if (g == np.assertion.iri) np.assertion.quads.push_back(q);
    else if (g == np.provenance.iri) np.provenance.quads.push_back(q);
    else np.pubinfo.quads.push_back(q);
  }
  return np;
}

PartSizes part_sizes(const Nanopublication& np) {
  return {np.head.quads.size(), np.assertion.quads.size(), np.provenance.quads.size(),
          np.pubinfo.quads.size()};
}

std::optional<std::string> find_nanopub_uri(const QuadDocument& doc) {
  std::optional<std::string> found;
  for (const Quad& q : doc.quads) {
    if (q.predicate.value() == vocab::kRdfType && q.object.is_iri() &&
        q.object.value() == vocab::kNanopublication) {
      if (found && *found != q.subject.value()) return std::nullopt;
      found = q.subject.value();
    }
  }
  return found;
}

std::vector<Nanopublication> NanopubSplitter::add_graph(const std::string& graph,
                                                        std::vector<Quad> quads) {
  std::vector<Nanopublication> out;
  auto& slot = pending_[graph];
  for (auto& q : quads) slot.push_back(std::move(q));

  for (const Quad& q : slot) {
    if (q.predicate.value() == vocab::kRdfType && q.object.is_iri() &&
        q.object.value() == vocab::kNanopublication && !heads_.contains(graph)) {
      PendingHead head{q.subject.value(), {}};
      for (const Quad& l : slot) {
        if (l.subject.value() != head.uri || !l.object.is_iri()) continue;
        const std::string& p = l.predicate.value();
        if (p == vocab::kHasAssertion || p == vocab::kHasProvenance ||
            p == vocab::kHasPublicationInfo) {
          head.parts.push_back(l.object.value());
          part_to_head_[l.object.value()] = graph;
        }
      }
      heads_.emplace(graph, std::move(head));
      break;
    }
  }

  if (heads_.contains(graph)) {
    try_complete(graph, out);
  } else if (auto it = part_to_head_.find(graph); it != part_to_head_.end()) {
    std::string head = it->second;
    try_complete(head, out);
  }
  return out;
}

void NanopubSplitter::try_complete(const std::string& head_graph,
                                   std::vector<Nanopublication>& out) {
  auto hit = heads_.find(head_graph);
  if (hit == heads_.end()) return;
  const PendingHead& head = hit->second;
  for (const auto& part : head.parts) {
    if (!pending_.contains(part)) return;
  }
  QuadDocument doc;
  std::vector<std::string> graphs{head_graph};
  graphs.insert(graphs.end(), head.parts.begin(), head.parts.end());
  std::unordered_set<std::string> seen;
  for (const auto& g : graphs) {
    if (!seen.insert(g).second) continue;
    auto& quads = pending_[g];
    doc.quads.insert(doc.quads.end(), quads.begin(), quads.end());
  }
  try {
    out.push_back(assemble(doc, head.uri));
  } catch (const ValidationError&) {
    ++invalid_;
  }
  for (const auto& g : seen) {
    pending_.erase(g);
    part_to_head_.erase(g);
  }
  heads_.erase(hit);
}

std::vector<Nanopublication> split_nanopubs(const QuadDocument& doc) {
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<Quad>> by_graph;
  for (const Quad& q : doc.quads) {
    auto [it, inserted] = by_graph.try_emplace(q.graph.value());
    if (inserted) order.push_back(q.graph.value());
    it->second.push_back(q);
  }

  std::vector<Nanopublication> out;
  std::unordered_set<std::string> used;
  for (const auto& g : order) {
    const auto& quads = by_graph[g];
    auto typed = std::find_if(quads.begin(), quads.end(), [](const Quad& q) {
      return q.predicate.value() == vocab::kRdfType && q.object.is_iri() &&
             q.object.value() == vocab::kNanopublication;
    });
    if (typed == quads.end()) continue;
    const std::string uri = typed->subject.value();
    QuadDocument candidate;
    std::vector<std::string> graphs{g};
    for (const Quad& q : quads) {
      if (q.subject.value() == uri && q.object.is_iri() &&
          (q.predicate.value() == vocab::kHasAssertion ||
           q.predicate.value() == vocab::kHasProvenance ||
           q.predicate.value() == vocab::kHasPublicationInfo)) {
        graphs.push_back(q.object.value());
      }
    }
    std::unordered_set<std::string> seen;
    for (const auto& part : graphs) {
      if (!seen.insert(part).second) continue;
      auto it = by_graph.find(part);
      if (it == by_graph.end()) continue;
      candidate.quads.insert(candidate.quads.end(), it->second.begin(), it->second.end());
      used.insert(part);
    }
    out.push_back(assemble(candidate, uri));
  }
  for (const auto& g : order) {
    if (!used.contains(g)) {
      ValidationReport report;
      report.violations.push_back({std::string(rules::kUndeclaredGraph),
                                   "graph <" + g + "> belongs to no nanopublication"});
      throw ValidationError(std::move(report));
    }
  }
  return out;
}

}  // namespace nanopub
