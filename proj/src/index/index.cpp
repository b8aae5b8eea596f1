#include "nanopub/index.hpp"

#include <algorithm>
#include <unordered_map>

#include "nanopub/error.hpp"
#include "nanopub/timestamp.hpp"
#include "nanopub/trusty.hpp"
#include "nanopub/vocab.hpp"

namespace nanopub::index {

using rdf::Quad;
using rdf::QuadDocument;
using rdf::Term;

namespace {

Term iri(std::string_view v) { return Term::iri(std::string(v)); }

std::string graph_suffix(std::string_view base, std::string_view name) {
  return std::string(base.back() == '#' ? "_" : "#") + std::string(name);
}

void check_unique(std::span<const std::string> uris, std::string_view what) {
  UriSet seen;
  for (const auto& u : uris) {
    if (!seen.insert(u).second) {
      throw Error("duplicate-element", "duplicate " + std::string(what) + " <" + u + ">");
    }
  }
}

void check_trusty(std::span<const std::string> uris, std::string_view what) {
  for (const auto& u : uris) {
    if (!trusty::TrustyUri::parse(u)) {
      throw Error("invalid-element",
                  std::string(what) + " is not a trusty URI: <" + u + ">");
    }
  }
}

struct LinkSpec {
  std::span<const std::string> elements;
  std::span<const std::string> sub_indexes;
  std::optional<std::string> appends;
  bool incomplete = false;
  bool final_link = false;
};

IndexRecord mint_link(const LinkSpec& spec, const IndexMetadata& meta) {
  const std::string& base = meta.base;
  const Term self = iri(base);
  const Term head = iri(base + graph_suffix(base, "Head"));
  const Term assertion = iri(base + graph_suffix(base, "assertion"));
  const Term provenance = iri(base + graph_suffix(base, "provenance"));
  const Term pubinfo = iri(base + graph_suffix(base, "pubinfo"));
  const Term type = iri(vocab::kRdfType);

  QuadDocument doc;
  doc.add_prefix("np", std::string(vocab::kNp));
  doc.add_prefix("npx", std::string(vocab::kNpx));
  doc.add_prefix("dct", std::string(vocab::kDct));
  doc.add_prefix("prov", std::string(vocab::kProv));
  auto& q = doc.quads;
  q.emplace_back(self, type, iri(vocab::kNanopublication), head);
  q.emplace_back(self, iri(vocab::kHasAssertion), assertion, head);
  q.emplace_back(self, iri(vocab::kHasProvenance), provenance, head);
  q.emplace_back(self, iri(vocab::kHasPublicationInfo), pubinfo, head);

  q.emplace_back(self, type, iri(vocab::kNanopubIndex), assertion);
  if (spec.incomplete) q.emplace_back(self, type, iri(vocab::kIncompleteIndex), assertion);
  if (spec.appends) q.emplace_back(self, iri(vocab::kAppendsIndex), iri(*spec.appends), assertion);
  for (const auto& s : spec.sub_indexes) {
    q.emplace_back(self, iri(vocab::kIncludesSubindex), iri(s), assertion);
  }
  for (const auto& e : spec.elements) {
    q.emplace_back(self, iri(vocab::kIncludesElement), iri(e), assertion);
  }

  if (meta.creators.empty()) {
    q.emplace_back(assertion, type, iri(vocab::kProvEntity), provenance);
  }
  for (const auto& c : meta.creators) {
    q.emplace_back(assertion, iri(vocab::kProvWasAttributedTo), iri(c), provenance);
  }

  q.emplace_back(self, type, iri(vocab::kNanopubIndex), pubinfo);
  if (meta.created) {
    q.emplace_back(self, iri(vocab::kDctCreated),
                   Term::literal(*meta.created, std::string(vocab::kXsdDateTime)), pubinfo);
  }
  for (const auto& c : meta.creators) {
    q.emplace_back(self, iri(vocab::kDctCreator), iri(c), pubinfo);
  }
  if (spec.final_link && meta.title) {
    q.emplace_back(self, iri(vocab::kDctTitle), Term::literal(*meta.title), pubinfo);
  }

  auto minted = trusty::mint(doc, base);
  auto record = read_index(assemble(minted.document, minted.uri.str()));
  return std::move(*record);
}

std::vector<IndexRecord> emit_chain(std::span<const std::string> elements,
                                    std::span<const std::string> sub_indexes,
                                    std::optional<std::string> appends,
                                    const IndexMetadata& meta) {
  if (meta.capacity < 1) throw Error("invalid-capacity", "index capacity must be at least 1");
  if (!trusty::is_valid_base(meta.base)) {
    throw Error("invalid-base", "index base must end in '/', '#' or '.': " + meta.base);
  }
  const std::size_t links =
      elements.empty() ? 1 : (elements.size() + meta.capacity - 1) / meta.capacity;
  std::vector<IndexRecord> out;
  out.reserve(links);
  for (std::size_t i = 0; i < links; ++i) {
    const std::size_t begin = i * meta.capacity;
    const std::size_t end = std::min(elements.size(), begin + meta.capacity);
    const bool last = i + 1 == links;
    LinkSpec spec{elements.subspan(begin, end - begin),
                  last ? sub_indexes : std::span<const std::string>{},
                  out.empty() ? appends : std::optional<std::string>(out.back().uri),
                  !last, last};
    out.push_back(mint_link(spec, meta));
  }
  return out;
}

const IndexRecord& resolve(const Resolver& resolver, std::string_view uri) {
  const IndexRecord* r = resolver(uri);
  if (!r) throw Error("unresolved-index", "cannot resolve index <" + std::string(uri) + ">");
  return *r;
}

}  // namespace

bool is_index(const Nanopublication& np) {
  return std::any_of(np.assertion.quads.begin(), np.assertion.quads.end(), [&](const Quad& q) {
    return q.subject.value() == np.uri && q.predicate.value() == vocab::kRdfType &&
           q.object.is_iri() && q.object.value() == vocab::kNanopubIndex;
  });
}

std::optional<IndexRecord> read_index(const Nanopublication& np) {
  if (!is_index(np)) return std::nullopt;
  IndexRecord r;
  r.uri = np.uri;
  for (const Quad& q : np.assertion.quads) {
    if (q.subject.value() != np.uri || !q.object.is_iri()) continue;
    const std::string& p = q.predicate.value();
    const std::string& o = q.object.value();
    if (p == vocab::kIncludesElement) {
      r.elements.push_back(o);
    } else if (p == vocab::kIncludesSubindex) {
      r.sub_indexes.push_back(o);
    } else if (p == vocab::kAppendsIndex) {
      if (r.appends && *r.appends != o) {
        throw Error("invalid-index", "index <" + np.uri + "> appends more than one index");
      }
      r.appends = o;
    } else if (p == vocab::kRdfType && o == vocab::kIncompleteIndex) {
      r.is_incomplete = true;
    }
  }
  for (const Quad& q : np.pubinfo.quads) {
    if (q.subject.value() != np.uri) continue;
    const std::string& p = q.predicate.value();
    if (p == vocab::kDctTitle && q.object.is_literal()) {
      r.title = q.object.value();
    } else if (p == vocab::kDctCreated && q.object.is_literal()) {
      r.created = q.object.value();
    } else if (p == vocab::kDctCreator && q.object.is_iri()) {
      r.creators.push_back(q.object.value());
    }
  }
  if (r.appends && *r.appends == r.uri) {
    throw Error("invalid-index", "index <" + np.uri + "> appends itself");
  }
  try {
    check_unique(r.elements, "element");
    check_unique(r.sub_indexes, "sub-index");
  } catch (const Error& e) {
    throw Error("invalid-index", e.what());
  }
  r.nanopub = np;
  return r;
}

std::vector<IndexRecord> build_index(std::span<const std::string> elements,
                                     std::span<const std::string> sub_indexes,
                                     const IndexMetadata& metadata) {
  if (metadata.capacity < 1) throw Error("invalid-capacity", "index capacity must be at least 1");
  check_unique(elements, "element");
  check_unique(sub_indexes, "sub-index");
  check_trusty(elements, "element");
  check_trusty(sub_indexes, "sub-index");
  return emit_chain(elements, sub_indexes, std::nullopt, metadata);
}

UriSet expand(const IndexRecord& index, const Resolver& resolver) {
  // Iterative DFS over appends and sub-index edges; a grey node reached
  // again is a cycle, a black one is a shared (DAG) dependency.
  enum class Color { Grey, Black };
  std::unordered_map<std::string, Color> color;
  UriSet out;

  struct Frame {
    const IndexRecord* record;
    std::size_t next_edge;
  };
  auto edges = [](const IndexRecord& r) {
    std::vector<const std::string*> e;
    if (r.appends) e.push_back(&*r.appends);
    for (const auto& s : r.sub_indexes) e.push_back(&s);
    return e;
  };

  std::vector<Frame> stack{{&index, 0}};
  std::vector<std::vector<const std::string*>> edge_stack{edges(index)};
  color[index.uri] = Color::Grey;
  while (!stack.empty()) {
    Frame& top = stack.back();
    auto& top_edges = edge_stack.back();
    if (top.next_edge == top_edges.size()) {
      out.insert(top.record->elements.begin(), top.record->elements.end());
      color[top.record->uri] = Color::Black;
      stack.pop_back();
      edge_stack.pop_back();
      continue;
    }
    const std::string& target = *top_edges[top.next_edge++];
    auto it = color.find(target);
    if (it != color.end()) {
      if (it->second == Color::Grey) {
        throw Error("index-cycle", "cycle through index <" + target + ">");
      }
      continue;
    }
    const IndexRecord& child = resolve(resolver, target);
    color[target] = Color::Grey;
    stack.push_back({&child, 0});
    edge_stack.push_back(edges(child));
  }
  return out;
}

std::vector<std::string> direct_elements(const IndexRecord& index, const Resolver& resolver) {
  std::vector<const IndexRecord*> chain;
  UriSet seen;
  for (const IndexRecord* cur = &index;;) {
    if (!seen.insert(cur->uri).second) {
      throw Error("index-cycle", "append chain revisits <" + cur->uri + ">");
    }
    chain.push_back(cur);
    if (!cur->appends) break;
    cur = &resolve(resolver, *cur->appends);
  }
  std::vector<std::string> out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    out.insert(out.end(), (*it)->elements.begin(), (*it)->elements.end());
  }
  return out;
}

std::vector<IndexRecord> build_incremental(const IndexRecord& previous,
                                           std::span<const std::string> added,
                                           const UriSet& removed,
                                           const IndexMetadata& metadata,
                                           const Resolver& resolver) {
  check_unique(added, "element");
  check_trusty(added, "element");
  const UriSet before = expand(previous, resolver);
  for (const auto& r : removed) {
    if (!before.contains(r)) {
      throw Error("not-in-previous", "removed URI <" + r + "> is not in the previous version");
    }
  }

  std::vector<const IndexRecord*> chain;
  {
    UriSet seen;
    for (const IndexRecord* cur = &previous;;) {
      if (!seen.insert(cur->uri).second) {
        throw Error("index-cycle", "append chain revisits <" + cur->uri + ">");
      }
      chain.push_back(cur);
      if (!cur->appends) break;
      cur = &resolve(resolver, *cur->appends);
    }
    std::reverse(chain.begin(), chain.end());
  }

  std::unordered_map<std::string, bool> sub_touched;
  auto touched_sub = [&](const std::string& s) {
    auto it = sub_touched.find(s);
    if (it != sub_touched.end()) return it->second;
    bool hit = false;
    if (!removed.empty()) {
      for (const auto& e : expand(resolve(resolver, s), resolver)) {
        if (removed.contains(e)) {
          hit = true;
          break;
        }
      }
    }
    sub_touched.emplace(s, hit);
    return hit;
  };
  auto touched = [&](const IndexRecord& rec) {
    return std::any_of(rec.elements.begin(), rec.elements.end(),
                       [&](const std::string& e) { return removed.contains(e); }) ||
           std::any_of(rec.sub_indexes.begin(), rec.sub_indexes.end(), touched_sub);
  };

  std::size_t keep = 0;
  while (keep < chain.size() && chain[keep]->is_incomplete && !touched(*chain[keep])) ++keep;

  std::vector<std::string> elements;
  std::vector<std::string> subs;
  UriSet seen_elements;
  UriSet seen_subs;
  for (std::size_t i = keep; i < chain.size(); ++i) {
    const IndexRecord& rec = *chain[i];
    for (const auto& e : rec.elements) {
      if (!removed.contains(e) && seen_elements.insert(e).second) elements.push_back(e);
    }
    for (const auto& s : rec.sub_indexes) {
      if (!touched_sub(s)) {
        if (seen_subs.insert(s).second) subs.push_back(s);
        continue;
      }
      auto flat = expand(resolve(resolver, s), resolver);
      std::vector<std::string> sorted(flat.begin(), flat.end());
      std::sort(sorted.begin(), sorted.end());
      for (auto& e : sorted) {
        if (!removed.contains(e) && seen_elements.insert(e).second) elements.push_back(e);
      }
    }
  }
  for (const auto& a : added) {
    if (before.contains(a) && !removed.contains(a)) continue;
    if (seen_elements.insert(a).second) elements.push_back(a);
  }

  std::optional<std::string> appends;
  if (keep > 0) appends = chain[keep - 1]->uri;
  return emit_chain(elements, subs, appends, metadata);
}

std::vector<IndexSummary> list_indexes(std::span<const IndexRecord* const> records,
                                       const Resolver& resolver) {
  UriSet appended;
  for (const IndexRecord* r : records) {
    if (r->appends) appended.insert(*r->appends);
  }
  struct Row {
    const IndexRecord* record;
    std::optional<Timestamp> created;
    std::string code;
  };
  std::vector<Row> rows;
  for (const IndexRecord* r : records) {
    if (r->is_incomplete || appended.contains(r->uri)) continue;
    auto code = trusty::extract_artifact_code(r->uri);
    rows.push_back({r, r->created ? parse_datetime(*r->created) : std::nullopt,
                    code ? code->str() : r->uri});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.created.has_value() != b.created.has_value()) return a.created.has_value();
    if (a.created && *a.created != *b.created) return *a.created < *b.created;
    return a.code < b.code;
  });

  std::vector<IndexSummary> out;
  out.reserve(rows.size());
  for (const Row& row : rows) {
    IndexSummary s;
    s.number = out.size() + 1;
    s.uri = row.record->uri;
    s.title = row.record->title.value_or("");
    s.date = row.created ? format_date(*row.created) : "";
    s.sub_count = row.record->sub_indexes.size();
    s.size = expand(*row.record, resolver).size();
    out.push_back(std::move(s));
  }
  return out;
}

void IndexCatalog::add(IndexRecord record) {
  std::string key = record.uri;
  records_.insert_or_assign(std::move(key), std::move(record));
}

void IndexCatalog::add(std::span<const IndexRecord> records) {
  for (const auto& r : records) add(r);
}

const IndexRecord* IndexCatalog::find(std::string_view uri) const {
  auto it = records_.find(uri);
  return it == records_.end() ? nullptr : &it->second;
}

Resolver IndexCatalog::resolver() const {
  return [this](std::string_view uri) { return find(uri); };
}

std::vector<const IndexRecord*> IndexCatalog::records() const {
  std::vector<const IndexRecord*> out;
  out.reserve(records_.size());
  for (const auto& [uri, r] : records_) out.push_back(&r);
  return out;
}

}  // namespace nanopub::index
