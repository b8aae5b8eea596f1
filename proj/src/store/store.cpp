#include "nanopub/store.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include "nanopub/error.hpp"
#include "nanopub/trig.hpp"
#include "nanopub/vocab.hpp"

namespace nanopub::store {

namespace fs = std::filesystem;
using rdf::Quad;
using rdf::Term;

namespace {

constexpr const char* kJournal = "journal.log";

void post(std::unordered_map<Term, std::vector<std::uint32_t>, rdf::TermHash>& map,
          const Term& term, std::uint32_t slot) {
  auto& list = map[term];
  if (list.empty() || list.back() != slot) list.push_back(slot);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::optional<Timestamp> creation_time(const Nanopublication& np) {
  std::optional<Timestamp> fallback;
  for (const Quad& q : np.pubinfo.quads) {
    if (q.subject.value() != np.uri || !q.object.is_literal()) continue;
    if (q.predicate.value() == vocab::kDctCreated) {
      if (auto t = parse_datetime(q.object.value())) return t;
    } else if (q.predicate.value() == vocab::kPavCreatedOn && !fallback) {
      fallback = parse_datetime(q.object.value());
    }
  }
  return fallback;
}

Store::Store() = default;

Store::Store(fs::path directory) : dir_(std::move(directory)) {
  fs::create_directories(*dir_);
  load();
}

Store::~Store() = default;

ArtifactCode Store::put(const Nanopublication& np) {
  auto uri = trusty::TrustyUri::parse(np.uri);
  if (!uri) throw Error("not-trusty", "<" + np.uri + "> does not end in an artifact code");

  rdf::QuadDocument doc = np.to_document();
  // Re-assembling guards against hand-built containers with misrouted quads.
  Nanopublication canonical = assemble(doc, np.uri);
  if (auto v = trusty::verify(doc, *uri); !v) {
    throw Error("verification-failed", "<" + np.uri + ">: " + v.reason);
  }
  auto record = index::read_index(canonical);

  std::unique_lock lock(mutex_);
  if (auto it = by_code_.find(uri->code.str()); it != by_code_.end()) {
    if (rdf::quad_set(slots_[it->second]->nanopub.to_document()) != rdf::quad_set(doc)) {
      throw Error("integrity-fault", "code " + uri->code.str() + " already stored with other content");
    }
    return uri->code;
  }
  auto entry = std::make_shared<StoredNanopub>(StoredNanopub{
      uri->code, std::move(canonical), std::nullopt, static_cast<std::uint64_t>(slots_.size())});
  entry->created = creation_time(entry->nanopub);
  if (dir_) persist(*entry);
  insert_locked(std::move(entry), std::move(record));
  return uri->code;
}

void Store::insert_locked(std::shared_ptr<const StoredNanopub> entry,
                          std::optional<index::IndexRecord> record) {
  const auto slot = static_cast<Slot>(slots_.size());
  by_code_.emplace(entry->code.str(), slot);
  const Nanopublication& np = entry->nanopub;
  for (const NamedGraph* g : {&np.head, &np.assertion, &np.provenance, &np.pubinfo}) {
    for (const Quad& q : g->quads) {
      post(by_subject_, q.subject, slot);
      post(by_predicate_, q.predicate, slot);
      post(by_object_, q.object, slot);
      post(by_graph_, q.graph, slot);
      post(mentions_, q.subject, slot);
      post(mentions_, q.predicate, slot);
      if (q.object.is_iri()) post(mentions_, q.object, slot);
      post(mentions_, q.graph, slot);
    }
  }
  if (record) {
    std::string key = record->uri;
    indexes_.emplace(std::move(key), std::make_unique<index::IndexRecord>(std::move(*record)));
  }
  slots_.push_back(std::move(entry));
}

void Store::persist(const StoredNanopub& entry) const {
  rdf::QuadDocument doc = entry.nanopub.to_document();
  doc.add_prefix("np", std::string(vocab::kNp));
  {
    std::ofstream out(*dir_ / (entry.code.str() + ".trig"), std::ios::binary | std::ios::trunc);
    out << rdf::serialize_trig(doc);
    if (!out) throw Error("io", "cannot write nanopublication file for " + entry.code.str());
  }
  std::ofstream journal(*dir_ / kJournal, std::ios::binary | std::ios::app);
  journal << entry.ingested_at << ' ' << entry.code.str() << '\n';
  journal.flush();
  if (!journal) throw Error("io", "cannot append to journal");
}

void Store::load() {
  std::ifstream journal(*dir_ / kJournal);
  if (!journal) return;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(journal, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::uint64_t seq = 0;
    std::string code_text;
    if (!(fields >> seq >> code_text)) {
      throw Error("corrupt-store", "journal line " + std::to_string(line_no) + " is malformed");
    }
    auto code = ArtifactCode::parse(code_text);
    if (!code || seq != slots_.size()) {
      throw Error("corrupt-store", "journal line " + std::to_string(line_no) + " is out of sequence");
    }
    auto doc = rdf::parse_trig(read_file(*dir_ / (code_text + ".trig")));
    auto uri = find_nanopub_uri(doc);
    auto trusty_uri = uri ? trusty::TrustyUri::parse(*uri) : std::nullopt;
    if (!trusty_uri || trusty_uri->code != *code || !trusty::verify(doc, *trusty_uri)) {
      throw Error("corrupt-store", "stored file for " + code_text + " does not verify");
    }
    auto np = assemble(doc, *uri);
    auto record = index::read_index(np);
    auto entry = std::make_shared<StoredNanopub>(StoredNanopub{*code, std::move(np), std::nullopt, seq});
    entry->created = creation_time(entry->nanopub);
    insert_locked(std::move(entry), std::move(record));
  }
}

std::optional<Nanopublication> Store::get(const ArtifactCode& code) const {
  auto entry = get_stored(code);
  if (!entry) return std::nullopt;
  return entry->nanopub;
}

std::shared_ptr<const StoredNanopub> Store::get_stored(const ArtifactCode& code) const {
  std::shared_lock lock(mutex_);
  auto it = by_code_.find(code.str());
  return it == by_code_.end() ? nullptr : slots_[it->second];
}

bool Store::contains(const ArtifactCode& code) const {
  std::shared_lock lock(mutex_);
  return by_code_.contains(code.str());
}

std::size_t Store::size() const {
  std::shared_lock lock(mutex_);
  return slots_.size();
}

std::vector<ArtifactCode> Store::ordered(std::vector<Slot> slots, bool latest) const {
  if (latest) {
    std::sort(slots.begin(), slots.end(), [&](Slot a, Slot b) {
      const auto& x = *slots_[a];
      const auto& y = *slots_[b];
      if (x.created.has_value() != y.created.has_value()) return x.created.has_value();
      if (x.created && *x.created != *y.created) return *x.created > *y.created;
      return x.code < y.code;
    });
  } else {
    std::sort(slots.begin(), slots.end());
  }
  std::vector<ArtifactCode> out;
  out.reserve(slots.size());
  for (Slot s : slots) out.push_back(slots_[s]->code);
  return out;
}

std::vector<ArtifactCode> Store::find_by_pattern(const rdf::QuadPattern& pattern,
                                                 bool latest) const {
  std::shared_lock lock(mutex_);
  std::vector<Slot> hits;
  if (pattern.is_wildcard()) {
    hits.resize(slots_.size());
    for (Slot i = 0; i < hits.size(); ++i) hits[i] = i;
    return ordered(std::move(hits), latest);
  }

  // Narrowest posting list among the bound positions.
  const std::vector<Slot>* candidates = nullptr;
  auto narrow = [&](const std::optional<Term>& term, const Postings& postings) -> bool {
    if (!term) return true;
    auto it = postings.find(*term);
    if (it == postings.end()) return false;
    if (!candidates || it->second.size() < candidates->size()) candidates = &it->second;
    return true;
  };
  if (!narrow(pattern.subject, by_subject_) || !narrow(pattern.predicate, by_predicate_) ||
      !narrow(pattern.object, by_object_) || !narrow(pattern.graph, by_graph_)) {
    return {};
  }
  for (Slot s : *candidates) {
    const Nanopublication& np = slots_[s]->nanopub;
    bool any = false;
    for (const NamedGraph* g : {&np.head, &np.assertion, &np.provenance, &np.pubinfo}) {
      any = std::any_of(g->quads.begin(), g->quads.end(),
                        [&](const Quad& q) { return pattern.matches(q); });
      if (any) break;
    }
    if (any) hits.push_back(s);
  }
  return ordered(std::move(hits), latest);
}

std::vector<ArtifactCode> Store::find_by_uri(std::string_view uri, bool latest) const {
  if (!rdf::is_absolute_iri(uri)) return {};
  std::shared_lock lock(mutex_);
  auto it = mentions_.find(Term::iri(std::string(uri)));
  if (it == mentions_.end()) return {};
  return ordered(it->second, latest);
}

std::vector<JournalEntry> Store::journal(std::uint64_t from_seq, std::size_t limit) const {
  std::shared_lock lock(mutex_);
  std::vector<JournalEntry> out;
  for (std::uint64_t s = from_seq; s < slots_.size() && out.size() < limit; ++s) {
    out.push_back({s, slots_[s]->code});
  }
  return out;
}

std::uint64_t Store::next_seq() const {
  std::shared_lock lock(mutex_);
  return slots_.size();
}

std::vector<std::shared_ptr<const StoredNanopub>> Store::all() const {
  std::shared_lock lock(mutex_);
  return slots_;
}

std::vector<const index::IndexRecord*> Store::index_records() const {
  std::shared_lock lock(mutex_);
  std::vector<const index::IndexRecord*> out;
  out.reserve(indexes_.size());
  for (const auto& [uri, r] : indexes_) out.push_back(r.get());
  std::sort(out.begin(), out.end(),
            [](const auto* a, const auto* b) { return a->uri < b->uri; });
  return out;
}

const index::IndexRecord* Store::find_index(std::string_view uri) const {
  std::shared_lock lock(mutex_);
  auto it = indexes_.find(std::string(uri));
  return it == indexes_.end() ? nullptr : it->second.get();
}

index::Resolver Store::index_resolver() const {
  return [this](std::string_view uri) { return find_index(uri); };
}

}  // namespace nanopub::store
