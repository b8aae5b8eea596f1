// nanopub: command-line front for the toolkit.
//
// Exit status: 0 success, 1 domain error (invalid, unverifiable, not found),
// 2 usage error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nanopub/analysis.hpp"
#include "nanopub/api.hpp"
#include "nanopub/corpus.hpp"
#include "nanopub/error.hpp"
#include "nanopub/index.hpp"
#include "nanopub/net.hpp"
#include "nanopub/simulation.hpp"
#include "nanopub/store.hpp"
#include "nanopub/trig.hpp"
#include "nanopub/trusty.hpp"
#include "nanopub/vocab.hpp"

namespace fs = std::filesystem;
using namespace nanopub;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error("io", "cannot write " + path);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> out;
  std::istringstream in(read_text(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() != '#') out.push_back(line);
  }
  return out;
}

// Row printer honouring --format.
struct Output {
  std::string format = "text";
  void row(std::initializer_list<std::string> fields) const {
    bool first = true;
    for (const auto& f : fields) {
      if (!first) std::cout << (format == "tsv" ? "\t" : "  ");
      std::cout << f;
      first = false;
    }
    std::cout << '\n';
  }
};

// The document's nanopublication URI: the typed subject, else the subject
// of any head link, else empty.
std::string guess_uri(const rdf::QuadDocument& doc) {
  if (auto uri = find_nanopub_uri(doc)) return *uri;
  for (const auto& q : doc.quads) {
    const auto& p = q.predicate.value();
    if (p == vocab::kHasAssertion || p == vocab::kHasProvenance || p == vocab::kHasPublicationInfo) {
      return q.subject.value();
    }
  }
  return {};
}

trusty::TrustyUri trusty_uri_of(const rdf::QuadDocument& doc) {
  auto uri = find_nanopub_uri(doc);
  if (!uri) throw Error("missing-head-link", "no nanopublication URI found");
  auto t = trusty::TrustyUri::parse(*uri);
  if (!t) throw Error("not-trusty", "<" + *uri + "> does not end in an artifact code");
  return *t;
}

std::optional<trusty::ArtifactCode> code_arg(const std::string& text) {
  if (auto c = trusty::ArtifactCode::parse(text)) return c;
  return trusty::extract_artifact_code(text);
}

std::optional<rdf::Term> iri_opt(const std::string& v, const char* what) {
  if (v.empty()) return std::nullopt;
  if (!rdf::is_absolute_iri(v)) throw UsageError(std::string(what) + " must be an absolute IRI");
  return rdf::Term::iri(v);
}

std::vector<index::IndexRecord> records_from_file(const std::string& path) {
  std::vector<index::IndexRecord> out;
  for (auto& np : split_nanopubs(rdf::parse_trig(read_text(path)))) {
    if (auto r = index::read_index(np)) out.push_back(std::move(*r));
  }
  return out;
}

std::string chain_trig(const std::vector<index::IndexRecord>& chain) {
  rdf::QuadDocument all;
  all.add_prefix("np", std::string(vocab::kNp));
  all.add_prefix("npx", std::string(vocab::kNpx));
  for (const auto& r : chain) {
    auto d = r.nanopub.to_document();
    all.quads.insert(all.quads.end(), d.quads.begin(), d.quads.end());
  }
  return rdf::serialize_trig(all);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nanopublication toolkit: validation, trusty URIs, indexes, store, network, API "
               "and corpus analysis"};
  app.require_subcommand(1);
  Output out;
  std::uint64_t seed = 0;
  std::string store_dir = "nanopub-store";
  app.add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"text", "tsv"}))
      ->capture_default_str();
  app.add_option("--seed", seed, "Seed for all randomness")->capture_default_str();
  app.add_option("--store", store_dir, "Store directory")
      ->envname("NANO_STORE_DIR")
      ->capture_default_str();

  std::function<int()> action;

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Check the four-graph structure");
  std::string validate_file, validate_uri;
  validate_cmd->add_option("file", validate_file, "TriG file ('-' for stdin)")->required();
  validate_cmd->add_option("--uri", validate_uri, "Nanopublication URI (default: from the head)");
  validate_cmd->callback([&] {
    action = [&] {
      auto doc = rdf::parse_trig(read_text(validate_file));
      const std::string uri = validate_uri.empty() ? guess_uri(doc) : validate_uri;
      auto report = validate(doc, uri);
      if (report.valid()) {
        out.row({"valid", uri});
        return 0;
      }
      for (const auto& v : report.violations) out.row({"invalid", v.rule, v.message});
      return 1;
    };
  });

  // mint
  auto* mint_cmd = app.add_subcommand("mint", "Compute the artifact code and rewrite the URIs");
  std::string mint_file, mint_base, mint_out;
  mint_cmd->add_option("file", mint_file, "Unminted TriG file")->required();
  mint_cmd->add_option("--base", mint_base, "Base IRI standing in for the nanopublication URI")
      ->required();
  mint_cmd->add_option("--out", mint_out, "Write the minted TriG here instead of stdout");
  mint_cmd->callback([&] {
    action = [&] {
      auto doc = rdf::parse_trig(read_text(mint_file));
      auto minted = trusty::mint(doc, mint_base);
      const std::string trig = rdf::serialize_trig(minted.document);
      if (mint_out.empty()) {
        std::cout << trig;
      } else {
        write_text(mint_out, trig);
        out.row({minted.uri.str(), minted.uri.code.str()});
      }
      return 0;
    };
  });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check content against the trusty URI");
  std::string verify_file;
  verify_cmd->add_option("file", verify_file, "Minted TriG file")->required();
  verify_cmd->callback([&] {
    action = [&] {
      auto doc = rdf::parse_trig(read_text(verify_file));
      auto uri = trusty_uri_of(doc);
      auto v = trusty::verify(doc, uri);
      if (v) {
        out.row({"verified", uri.code.str()});
        return 0;
      }
      out.row({"failed", uri.code.str(), v.reason});
      return 1;
    };
  });

  // index
  auto* index_cmd = app.add_subcommand("index", "Build, append, expand and list indexes");
  index_cmd->require_subcommand(1);
  index::IndexMetadata meta;
  std::string meta_title, meta_created;
  auto add_meta = [&](CLI::App* c) {
    c->add_option("--title", meta_title, "Index title");
    c->add_option("--creator", meta.creators, "Creator IRI (repeatable)");
    c->add_option("--created", meta_created, "xsd:dateTime of creation");
    c->add_option("--capacity", meta.capacity, "Elements per link")->capture_default_str();
    c->add_option("--base", meta.base, "Base IRI for the new links")->capture_default_str();
  };
  auto finish_meta = [&] {
    if (!meta_title.empty()) meta.title = meta_title;
    if (!meta_created.empty()) meta.created = meta_created;
  };
  auto emit_chain = [&](const std::vector<index::IndexRecord>& chain, const std::string& file) {
    if (file.empty()) {
      std::cout << chain_trig(chain);
    } else {
      write_text(file, chain_trig(chain));
      for (const auto& r : chain) out.row({r.uri, r.is_incomplete ? "incomplete" : "complete"});
    }
  };

  auto* build_cmd = index_cmd->add_subcommand("build", "New index from element and sub-index lists");
  std::string build_elements, build_subs, build_out;
  build_cmd->add_option("--elements", build_elements, "File with one nanopublication URI per line");
  build_cmd->add_option("--subindexes", build_subs, "File with one index URI per line");
  build_cmd->add_option("--out", build_out, "Write the chain's TriG here instead of stdout");
  add_meta(build_cmd);
  build_cmd->callback([&] {
    action = [&] {
      finish_meta();
      auto elements = build_elements.empty() ? std::vector<std::string>{} : read_lines(build_elements);
      auto subs = build_subs.empty() ? std::vector<std::string>{} : read_lines(build_subs);
      emit_chain(index::build_index(elements, subs, meta), build_out);
      return 0;
    };
  });

  auto* append_cmd = index_cmd->add_subcommand("append", "New version of a stored index");
  std::string append_prev, append_add, append_remove, append_out;
  append_cmd->add_option("previous", append_prev, "URI of the previous version (in the store)")
      ->required();
  append_cmd->add_option("--add", append_add, "File of URIs to add");
  append_cmd->add_option("--remove", append_remove, "File of URIs to remove");
  append_cmd->add_option("--out", append_out, "Write the chain's TriG here instead of stdout");
  add_meta(append_cmd);
  append_cmd->callback([&] {
    action = [&] {
      finish_meta();
      store::Store st{fs::path(store_dir)};
      const auto* prev = st.find_index(append_prev);
      if (!prev) throw Error("not-found", "no stored index <" + append_prev + ">");
      auto added = append_add.empty() ? std::vector<std::string>{} : read_lines(append_add);
      index::UriSet removed;
      if (!append_remove.empty()) {
        for (auto& u : read_lines(append_remove)) removed.insert(std::move(u));
      }
      emit_chain(index::build_incremental(*prev, added, removed, meta, st.index_resolver()),
                 append_out);
      return 0;
    };
  });

  auto* expand_cmd = index_cmd->add_subcommand("expand", "All nanopublications an index contains");
  std::string expand_uri, expand_file;
  expand_cmd->add_option("uri", expand_uri, "Index URI")->required();
  expand_cmd->add_option("--file", expand_file, "Resolve from this TriG file instead of the store");
  expand_cmd->callback([&] {
    action = [&] {
      std::vector<std::string> members;
      auto collect = [&](const index::IndexRecord* r, const index::Resolver& resolve) {
        if (!r) throw Error("not-found", "no index <" + expand_uri + ">");
        auto set = index::expand(*r, resolve);
        members.assign(set.begin(), set.end());
      };
      if (!expand_file.empty()) {
        index::IndexCatalog catalog;
        catalog.add(records_from_file(expand_file));
        collect(catalog.find(expand_uri), catalog.resolver());
      } else {
        store::Store st{fs::path(store_dir)};
        collect(st.find_index(expand_uri), st.index_resolver());
      }
      std::sort(members.begin(), members.end());
      for (const auto& m : members) std::cout << m << '\n';
      return 0;
    };
  });

  auto* list_cmd = index_cmd->add_subcommand("list", "Complete indexes in the store");
  list_cmd->callback([&] {
    action = [&] {
      store::Store st{fs::path(store_dir)};
      auto records = st.index_records();
      for (const auto& s : index::list_indexes(records, st.index_resolver())) {
        out.row({std::to_string(s.number), s.uri, s.title, s.date, std::to_string(s.sub_count),
                 std::to_string(s.size)});
      }
      return 0;
    };
  });

  // store
  auto* store_cmd = app.add_subcommand("store", "Ingest into and query the local store");
  store_cmd->require_subcommand(1);
  auto* ingest_cmd = store_cmd->add_subcommand("ingest", "Verify and store nanopublications");
  std::vector<std::string> ingest_paths;
  ingest_cmd->add_option("paths", ingest_paths, "TriG files or directories")->required();
  ingest_cmd->callback([&] {
    action = [&] {
      store::Store st{fs::path(store_dir)};
      std::size_t stored = 0, rejected = 0;
      std::size_t invalid = 0;
      for (const auto& p : ingest_paths) {
        invalid += corpus::for_each_nanopub(p, [&](Nanopublication&& np) {
          try {
            st.put(np);
            ++stored;
          } catch (const Error& e) {
            ++rejected;
            std::cerr << "rejected <" << np.uri << ">: " << e.code() << ": " << e.what() << '\n';
          }
        });
      }
      out.row({"stored", std::to_string(stored)});
      out.row({"rejected", std::to_string(rejected + invalid)});
      return rejected + invalid == 0 ? 0 : 1;
    };
  });

  auto* get_cmd = store_cmd->add_subcommand("get", "Print a stored nanopublication");
  std::string get_what;
  get_cmd->add_option("code", get_what, "Artifact code or trusty URI")->required();
  get_cmd->callback([&] {
    action = [&] {
      store::Store st{fs::path(store_dir)};
      api::ApiService service(st);
      std::cout << service.get_nanopub(get_what);
      return 0;
    };
  });

  auto* find_cmd = store_cmd->add_subcommand("find", "Codes matching a triple pattern or a URI");
  std::string find_subj, find_pred, find_obj, find_uri, find_objtype = "iri";
  bool find_latest = false;
  find_cmd->add_option("--subj", find_subj, "Subject IRI");
  find_cmd->add_option("--pred", find_pred, "Predicate IRI");
  find_cmd->add_option("--obj", find_obj, "Object IRI or literal");
  find_cmd->add_option("--objtype", find_objtype, "iri or literal")
      ->check(CLI::IsMember({"iri", "literal"}))
      ->capture_default_str();
  find_cmd->add_option("--uri", find_uri, "Any-position IRI (instead of a pattern)");
  find_cmd->add_flag("--latest", find_latest, "Newest first");
  find_cmd->callback([&] {
    action = [&] {
      store::Store st{fs::path(store_dir)};
      std::vector<trusty::ArtifactCode> codes;
      if (!find_uri.empty()) {
        if (!find_subj.empty() || !find_pred.empty() || !find_obj.empty()) {
          throw UsageError("--uri cannot be combined with a pattern");
        }
        codes = st.find_by_uri(find_uri, find_latest);
      } else {
        rdf::QuadPattern p;
        p.subject = iri_opt(find_subj, "--subj");
        p.predicate = iri_opt(find_pred, "--pred");
        if (find_objtype == "literal") {
          p.object = rdf::Term::literal(find_obj);
        } else {
          p.object = iri_opt(find_obj, "--obj");
        }
        codes = st.find_by_pattern(p, find_latest);
      }
      for (const auto& c : codes) std::cout << c.str() << '\n';
      return 0;
    };
  });

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Serve the query API over HTTP");
  int serve_port = 8080;
  std::string serve_host = "127.0.0.1";
  serve_cmd->add_option("--port", serve_port, "TCP port")->capture_default_str();
  serve_cmd->add_option("--host", serve_host, "Bind address")->capture_default_str();
  serve_cmd->callback([&] {
    action = [&] {
      store::Store st{fs::path(store_dir)};
      api::ApiService service(st);
      api::ApiServer server(service);
      std::cerr << "serving " << st.size() << " nanopublications on http://" << serve_host << ':'
                << serve_port << "/api/\n";
      if (!server.listen(serve_host, serve_port)) throw Error("io", "cannot listen");
      return 0;
    };
  });

  // node
  auto* node_cmd = app.add_subcommand("node", "Run a network node or a simulation");
  node_cmd->require_subcommand(1);
  auto* run_cmd = node_cmd->add_subcommand("run", "Serve a node over HTTP");
  int node_port = 9090;
  std::string node_host = "127.0.0.1";
  std::vector<std::string> node_peers;
  double node_interval = 10.0;
  run_cmd->add_option("--port", node_port, "TCP port")->capture_default_str();
  run_cmd->add_option("--host", node_host, "Bind address")->capture_default_str();
  run_cmd->add_option("--peer", node_peers, "Peer address host:port (repeatable)");
  run_cmd->add_option("--sync-interval", node_interval, "Seconds between sync rounds (0: off)")
      ->capture_default_str();
  run_cmd->callback([&] {
    action = [&] {
      net::ServerNode node(node_host + ":" + std::to_string(node_port), fs::path(store_dir),
                           node_peers);
      net::NodeServer server(node, node_interval);
      std::cerr << "node " << node.id() << " holding " << node.store().size()
                << " nanopublications\n";
      if (!server.listen(node_host, node_port)) throw Error("io", "cannot listen");
      return 0;
    };
  });

  auto* sim_cmd = node_cmd->add_subcommand("simulate", "Deterministic network simulation");
  std::string sim_config, sim_out;
  sim_cmd->add_option("--config", sim_config, "SimConfig file (key = value)")->required();
  sim_cmd->add_option("--out", sim_out, "Write the report here instead of stdout");
  sim_cmd->callback([&] {
    action = [&] {
      auto config = net::SimConfig::parse(read_text(sim_config));
      if (app.get_option("--seed")->count() > 0) config.seed = seed;
      auto report = net::run_simulation(config, net::generate_workload(config));
      if (sim_out.empty()) {
        std::cout << report.to_text();
      } else {
        write_text(sim_out, report.to_text());
      }
      return 0;
    };
  });

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Corpus statistics report files");
  std::string analyze_in, analyze_out;
  analysis::AnalysisOptions analyze_opts;
  std::vector<std::string> tools;
  bool analyze_serial = false;
  analyze_cmd->add_option("corpus", analyze_in, "TriG file or directory of .trig files")->required();
  analyze_cmd->add_option("--out", analyze_out, "Report directory")->required();
  analyze_cmd->add_option("--tool", tools, "Tool URI for creator classification (repeatable)");
  analyze_cmd->add_option("--top-k", analyze_opts.top_k, "Namespaces per cell")->capture_default_str();
  analyze_cmd->add_flag("--serial", analyze_serial, "Use the single-threaded reference");
  analyze_cmd->callback([&] {
    action = [&] {
      if (!tools.empty()) analyze_opts.tool_uris = tools;
      std::size_t invalid = 0;
      analysis::AnalysisReport report;
      if (analyze_serial) {
        auto corpus = corpus::read_corpus(analyze_in);
        report = analysis::analyze_serial(corpus, analyze_opts);
      } else {
        report = analysis::analyze_path(analyze_in, analyze_opts, &invalid);
      }
      analysis::write_reports(report, analyze_out);
      std::cout << analysis::summary_text(report);
      if (invalid > 0) std::cerr << invalid << " invalid nanopublications skipped\n";
      return 0;
    };
  });

  // gen-corpus
  auto* gen_cmd = app.add_subcommand("gen-corpus", "Seeded synthetic corpus");
  corpus::CorpusOptions gen;
  std::string gen_out;
  gen_cmd->add_option("--count", gen.count, "Nanopublications")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "Output TriG file")->required();
  gen_cmd->add_option("--base", gen.base, "Base IRI")->capture_default_str();
  gen_cmd->add_option("--scholar-rate", gen.scholar_creator_rate, "Per mille")->capture_default_str();
  gen_cmd->add_option("--researcherid-rate", gen.researcherid_creator_rate, "Per mille")
      ->capture_default_str();
  gen_cmd->add_option("--other-creator-rate", gen.other_creator_rate, "Per mille")
      ->capture_default_str();
  gen_cmd->add_option("--unlicensed-rate", gen.unlicensed_rate, "Per mille")->capture_default_str();
  gen_cmd->add_option("--second-license-rate", gen.second_license_rate, "Per mille")
      ->capture_default_str();
  gen_cmd->add_option("--undated-rate", gen.undated_rate, "Per mille")->capture_default_str();
  gen_cmd->add_option("--pav-date-rate", gen.pav_date_rate, "Per mille")->capture_default_str();
  gen_cmd->callback([&] {
    action = [&] {
      gen.seed = seed;
      auto nps = corpus::generate(gen);
      corpus::write_corpus(gen_out, nps);
      out.row({"generated", std::to_string(nps.size()), gen_out});
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return action ? action() : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
