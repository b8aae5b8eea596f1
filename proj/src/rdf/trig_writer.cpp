#include <string>
#include <unordered_map>

#include "nanopub/trig.hpp"

namespace nanopub::rdf {

std::string serialize_trig(const QuadDocument& doc) {
  std::string out;
  for (const auto& [label, iri] : doc.prefixes) {
    out += "@prefix " + label + ": <" + iri + "> .\n";
  }

  // Group by graph, keeping first-appearance order.
  std::vector<const Term*> graphs;
  std::unordered_map<Term, std::vector<const Quad*>, TermHash> by_graph;
  for (const auto& q : doc.quads) {
    auto [it, inserted] = by_graph.try_emplace(q.graph);
    if (inserted) graphs.push_back(&q.graph);
    it->second.push_back(&q);
  }

  for (const Term* g : graphs) {
    if (!out.empty()) out += '\n';
    out += to_ntriples(*g) + " {\n";
    for (const Quad* q : by_graph[*g]) {
      out += "  ";
      out += to_ntriples(q->subject);
      out += ' ';
      out += to_ntriples(q->predicate);
      out += ' ';
      out += to_ntriples(q->object);
      out += " .\n";
    }
    out += "}\n";
  }
  return out;
}

}  // namespace nanopub::rdf
