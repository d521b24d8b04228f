#include "ctsearch/cli/cli.hpp"

#include <unistd.h>

#include <chrono>
#include <csignal>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctsearch/corpus/ingest.hpp"
#include "ctsearch/corpus/meta_filter.hpp"
#include "ctsearch/error.hpp"
#include "ctsearch/index/persist.hpp"
#include "ctsearch/linker/linker.hpp"
#include "ctsearch/search/highlight.hpp"
#include "ctsearch/service/api.hpp"
#include "ctsearch/service/log.hpp"
#include "ctsearch/service/server.hpp"
#include "ctsearch/termeval/evaluate.hpp"
#include "ctsearch/termeval/mwe.hpp"
#include "ctsearch/termeval/textrank.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Failure with an explicit exit code.
struct Exit {
  int code;
  std::string message;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kEmptyQuery:
    case ErrorCode::kEmptyTerm:
    case ErrorCode::kUnescapableTerm:
    case ErrorCode::kPatternSyntaxError:
      return kExitUsage;
    case ErrorCode::kHttpError:
    case ErrorCode::kMissingFixture:
      return kExitEnvironment;
    default:
      return kExitData;
  }
}

std::shared_ptr<const index::IndexedCorpus> open_index(const fs::path& path) {
  try {
    return std::make_shared<index::IndexedCorpus>(index::load_index(path));
  } catch (const Error& e) {
    throw Exit{kExitEnvironment, "cannot load index " + path.string() + ": " + e.what()};
  }
}

service::ApiConfig base_config(const std::string& config_path) {
  service::ApiConfig c = config_path.empty() ? service::ApiConfig{} : service::load_config(config_path);
  service::apply_env_overrides(c);
#ifdef CTSEARCH_DEFAULT_FIXTURES
  if (c.wikidata.fixtures_dir.empty()) c.wikidata.fixtures_dir = CTSEARCH_DEFAULT_FIXTURES;
#endif
  return c;
}

std::vector<index::CorpusId> parse_corpus_list(const std::string& csv) {
  corpus::CorpusRegistry registry;
  std::vector<index::CorpusId> out;
  std::stringstream ss(csv);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto name = text::trim(part);
    if (name.empty()) continue;
    out.push_back(registry.resolve(name).value_or(index::CorpusId(std::string(name))));
  }
  return out;
}

bool use_color(const std::string& mode) {
  if (mode == "always") return true;
  if (mode == "never") return false;
  const char* no_color = std::getenv("NO_COLOR");
  if (no_color != nullptr && *no_color != '\0') return false;
  return isatty(STDOUT_FILENO) != 0;
}

std::int64_t build_timestamp() {
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    try {
      return std::stoll(epoch);
    } catch (const std::exception&) {
      throw Exit{kExitUsage, "SOURCE_DATE_EPOCH is not an integer"};
    }
  }
  return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

// ---- ingest ---------------------------------------------------------------

struct IngestArgs {
  std::string corpus, raw, meta, out;
};

int cmd_ingest(const IngestArgs& a, std::ostream& out, std::ostream& err) {
  corpus::CorpusRegistry registry;
  corpus::IngestOptions options{registry.resolve(a.corpus).value_or(corpus::CorpusId(a.corpus)), a.raw, a.meta, a.out};
  corpus::IngestReport report;
  try {
    report = corpus::run_ingest(options);
  } catch (const Error& e) {
    throw Exit{kExitData, e.what()};
  }
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  for (const auto& f : report.failures) err << "error: " << f.doc_id << ": " << f.reason << '\n';
  for (const auto& d : report.diagnostics) {
    err << "conllu: line " << d.line << ": " << corpus::to_string(d.kind) << ": " << d.message << '\n';
  }
  out << "emitted " << report.emitted << " documents, dropped " << report.dropped.size() << ", failed "
      << report.failures.size() << '\n';
  out << "  " << report.conllu_path.string() << '\n';
  out << "  " << report.manifest_path.string() << '\n';
  out << "  " << report.drop_report_path.string() << '\n';
  return kExitOk;
}

// ---- index ----------------------------------------------------------------

struct IndexBuildArgs {
  std::string in, out, corpora;
};

int cmd_index_build(const IndexBuildArgs& a, std::ostream& out, std::ostream& err) {
  corpus::LoadedCorpus loaded;
  auto only = parse_corpus_list(a.corpora);
  try {
    loaded = corpus::load_corpus_dir(a.in, only);
  } catch (const Error& e) {
    throw Exit{kExitData, e.what()};
  }
  if (loaded.files.empty()) throw Exit{kExitData, "no .conllu files in " + a.in};
  for (const auto& d : loaded.diagnostics) {
    err << "conllu: line " << d.line << ": " << corpus::to_string(d.kind) << ": " << d.message << '\n';
  }
  auto filtered = corpus::filter_meta_documents(std::move(loaded.documents));
  for (const auto& d : filtered.dropped) err << "dropped " << d.document.metadata.doc_id << ": " << d.reason << '\n';

  index::IndexedCorpus indexed;
  try {
    indexed = index::build_index(std::move(filtered.kept), {build_timestamp()});
  } catch (const Error& e) {
    throw Exit{kExitData, e.what()};
  }
  index::IndexManifest manifest;
  try {
    manifest = index::persist_index(indexed.index, indexed.store, a.out);
  } catch (const Error& e) {
    throw Exit{kExitEnvironment, e.what()};
  }
  out << "wrote " << a.out << '\n';
  for (const auto& [id, s] : manifest.corpora) {
    out << "  " << id << ": " << s.documents << " documents, " << s.sentences << " sentences, " << s.tokens
        << " tokens\n";
  }
  out << "  " << manifest.lemma_count << " lemmas, payload sha256 " << manifest.payload_sha256 << '\n';
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string index, fixtures;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream&) {
  // Unlike the other commands, a damaged index is the finding here, not the environment.
  std::shared_ptr<const index::IndexedCorpus> indexed;
  try {
    indexed = std::make_shared<index::IndexedCorpus>(index::load_index(a.index));
  } catch (const Error& e) {
    throw Exit{e.code() == ErrorCode::kIo ? kExitEnvironment : kExitData,
               a.index + ": " + std::string(to_string(e.code())) + ": " + e.what()};
  }
  const auto& manifest = indexed->index.manifest();
  std::size_t postings = indexed->index.total_postings();
  if (postings != manifest.token_count) {
    throw Exit{kExitData, "posting count " + std::to_string(postings) + " differs from manifest token count"};
  }
  out << "index ok: " << a.index << " (version " << manifest.version << ", " << manifest.lemma_count << " lemmas, "
      << postings << " postings, sha256 " << manifest.payload_sha256 << ")\n";
  if (!a.fixtures.empty()) {
    linker::FixtureStore store;
    try {
      store = linker::FixtureStore::load(a.fixtures);
    } catch (const Error& e) {
      throw Exit{kExitData, e.what()};
    }
    out << "fixtures ok: " << store.size() << " recorded responses in " << a.fixtures << '\n';
  }
  return kExitOk;
}

// ---- search ---------------------------------------------------------------

struct SearchArgs {
  std::string index, q, corpora, color = "auto", config;
  std::optional<std::size_t> limit, offset;
  bool json = false;
  bool q_given = false;
};

void print_search_text(const json& body, bool color, std::ostream& out) {
  const std::string on = color ? "\x1b[1;33m" : "**";
  const std::string off = color ? "\x1b[0m" : "**";
  out << "Query: " << body["query"].get<std::string>() << "  (lemmas: ";
  const auto& lemmas = body["lemmas"];
  for (std::size_t i = 0; i < lemmas.size(); ++i) out << (i ? " " : "") << lemmas[i].get<std::string>();
  out << ")\n";
  for (const auto& [id, group] : body["corpora"].items()) {
    out << "\n== " << group["display_name"].get<std::string>() << " [" << id << "]: "
        << group["total_documents"].get<std::size_t>() << " documents, " << group["total_matches"].get<std::size_t>()
        << " matches ==\n";
    if (group["cards"].empty()) out << "  (no matches)\n";
    for (const auto& card : group["cards"]) {
      out << "\n[" << card["doc_id"].get<std::string>() << "] " << card["title"].get<std::string>();
      if (!card["url"].is_null()) out << "  <" << card["url"].get<std::string>() << ">";
      out << '\n';
      for (const auto& s : card["sentences"]) {
        const std::string t = s["text"].get<std::string>();
        std::vector<index::TokenSpan> spans;
        for (const auto& h : s["highlights"]) {
          // highlights are code-point offsets; map back to bytes
          auto to_byte = [&](std::size_t cp) {
            std::size_t byte = 0;
            for (std::size_t seen = 0; byte < t.size() && seen < cp; ++seen) {
              auto c = static_cast<unsigned char>(t[byte]);
              byte += c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
            }
            return static_cast<std::uint32_t>(std::min(byte, t.size()));
          };
          spans.push_back({to_byte(h[0].get<std::size_t>()), to_byte(h[1].get<std::size_t>())});
        }
        out << "  - ";
        for (const auto& seg : search::highlight_sentence(t, spans)) {
          out << (seg.highlighted ? on + seg.text + off : seg.text);
        }
        out << '\n';
      }
    }
  }
}

int cmd_search(const SearchArgs& a, std::ostream& out, std::ostream& err) {
  if (text::trim(a.q).empty()) throw Exit{kExitUsage, "--q must not be empty"};
  auto config = base_config(a.config);
  auto corpus = open_index(a.index);
  service::ApiContext ctx(config, corpus);
  service::QueryParams params{{"q", a.q}};
  if (!a.corpora.empty()) params.emplace("corpora", a.corpora);
  if (a.limit) params.emplace("limit", std::to_string(*a.limit));
  if (a.offset) params.emplace("offset", std::to_string(*a.offset));
  auto response = service::handle_search(ctx, params);
  if (a.json) {
    out << response.body.dump(2) << '\n';
  } else if (response.status == 200) {
    print_search_text(response.body, use_color(a.color), out);
  }
  if (response.status != 200) {
    err << "error: " << response.body["error"]["message"].get<std::string>() << '\n';
    return response.status == 400 ? kExitUsage : kExitData;
  }
  return kExitOk;
}

// ---- link -----------------------------------------------------------------

struct LinkArgs {
  std::string q, index, fixtures, endpoint, strategy, record, config;
  bool live = false, instance_of = false, json = false;
};

int cmd_link(const LinkArgs& a, std::ostream& out, std::ostream& err) {
  if (text::trim(a.q).empty()) throw Exit{kExitUsage, "--q must not be empty"};
  auto config = base_config(a.config);
  config.wikidata.mode = a.live ? linker::ClientMode::kLive : linker::ClientMode::kReplay;
  if (!a.fixtures.empty()) config.wikidata.fixtures_dir = a.fixtures;
  if (!a.endpoint.empty()) config.wikidata.endpoint = a.endpoint;
  if (!a.record.empty()) config.wikidata.record_dir = fs::path(a.record);
  if (!a.strategy.empty()) config.filter_strategy = linker::parse_filter_strategy(a.strategy);
  if (a.instance_of) config.filter_instance_of = true;

  std::shared_ptr<const index::IndexedCorpus> corpus;
  if (!a.index.empty()) corpus = open_index(a.index);
  linker::Linker linker(service::linker_config(config), corpus);
  auto result = linker.link(a.q);

  if (a.json) {
    out << service::link_body(result).dump(2) << '\n';
  } else {
    out << "Wikidata (" << linker::to_string(config.wikidata.mode) << ", " << linker::to_string(linker.strategy())
        << " filtering):\n";
    if (result.wikidata.empty() && !result.wikidata_error) out << "  (no entries)\n";
    for (const auto& e : result.wikidata) {
      out << "  " << e.entity_id << "  " << e.label;
      if (e.description) out << " : " << *e.description;
      out << "\n    " << e.url << '\n';
    }
    out << "nLab:\n";
    if (result.nlab.empty()) out << "  (no entries)\n";
    for (const auto& e : result.nlab) out << "  " << e.label << "\n    " << e.url << '\n';
  }
  if (result.wikidata_error) {
    err << "wikidata unavailable: " << result.wikidata_error->what() << '\n';
    if (result.wikidata_error->code() == ErrorCode::kMissingFixture) {
      err << "hint: pass --live to query the endpoint (and --record DIR to save the response)\n";
    }
    return kExitEnvironment;
  }
  return kExitOk;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string index, gold, corpus = "TAC";
  std::vector<std::string> preds;
  std::vector<std::string> patterns;
  termeval::TextRankParams textrank;
  bool json = false;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream&) {
  if (!a.patterns.empty()) {
    try {
      termeval::compile_patterns(a.patterns);
    } catch (const Error& e) {
      throw Exit{kExitUsage, e.what()};
    }
  }
  auto indexed = open_index(a.index);
  corpus::CorpusRegistry registry;
  const index::CorpusId corpus = registry.resolve(a.corpus).value_or(index::CorpusId(a.corpus));

  termeval::SilverStandard gold;
  try {
    if (a.gold == "author") {
      gold = termeval::build_silver_author(*indexed, corpus);
    } else if (a.gold == "titles") {
      gold = termeval::build_silver_titles(termeval::nlab_titles(*indexed), *indexed, corpus);
    } else {
      gold = {fs::path(a.gold).filename().string(), termeval::read_prediction_file(a.gold, indexed->index),
              termeval::SilverProvenance::kFile};
    }
  } catch (const Error& e) {
    throw Exit{e.code() == ErrorCode::kIo ? kExitEnvironment : kExitData, e.what()};
  }

  std::vector<termeval::EvalReport> rows;
  std::vector<termeval::TermSentence> sentences;
  bool have_sentences = false;
  auto corpus_sentences = [&]() -> const std::vector<termeval::TermSentence>& {
    if (!have_sentences) {
      sentences = termeval::sentences_from_store(indexed->store, corpus);
      have_sentences = true;
    }
    return sentences;
  };
  for (const auto& pred : a.preds) {
    termeval::EvalReport row;
    if (pred == "textrank") {
      row = termeval::evaluate(termeval::lemma_forms(termeval::extract_textrank(corpus_sentences(), a.textrank)), gold);
      row.model = "TextRank";
    } else if (pred == "mwe") {
      termeval::MweOptions options;
      if (!a.patterns.empty()) options.patterns = a.patterns;
      row = termeval::evaluate(termeval::lemma_forms(termeval::extract_mwe(corpus_sentences(), options)), gold);
      row.model = "MWE";
    } else {
      try {
        row = termeval::evaluate(termeval::read_prediction_file(pred, indexed->index), gold);
      } catch (const Error& e) {
        throw Exit{e.code() == ErrorCode::kIo ? kExitEnvironment : kExitData, e.what()};
      }
      row.model = fs::path(pred).filename().string();
    }
    rows.push_back(std::move(row));
  }
  if (a.json) {
    out << termeval::report_to_json(rows, gold).dump(2) << '\n';
  } else {
    out << termeval::report_to_text(rows, gold);
  }
  return kExitOk;
}

// ---- serve ----------------------------------------------------------------

struct ServeArgs {
  std::string config, index, host, log_level = "info";
  std::optional<int> port;
  bool live = false;
};

int cmd_serve(const ServeArgs& a, std::ostream& out, std::ostream&) {
  auto config = base_config(a.config);
  if (!a.index.empty()) config.index_path = a.index;
  if (!a.host.empty()) config.host = a.host;
  if (a.port) config.port = static_cast<std::uint16_t>(*a.port);
  if (a.live) config.wikidata.mode = linker::ClientMode::kLive;
  if (config.index_path.empty()) throw Exit{kExitUsage, "no index path (use --index or the config file)"};
  service::set_log_level(service::parse_log_level(a.log_level));

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::ApiServer server(config);
  try {
    server.bind();
  } catch (const Error& e) {
    throw Exit{kExitEnvironment, e.what()};
  }
  out << "listening on http://" << config.host << ":" << server.port() << std::endl;
  std::thread http([&] { server.run(); });
  try {
    server.load_index();
  } catch (const Error& e) {
    service::log_event(service::LogLevel::kError, "index_load_failed", {{"message", e.what()}});
    server.stop();
    http.join();
    throw Exit{kExitEnvironment, std::string("cannot load index: ") + e.what()};
  }
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    service::log_event(service::LogLevel::kInfo, "shutdown", {{"signal", sig}});
    server.stop();
  });
  http.join();
  // Wake the waiter if the server stopped on its own.
  if (waiter.joinable()) {
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concept search over category theory corpora", "ctsearch"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ctsearch 1.0.0");

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Clean raw documents into CONLL-U plus a manifest");
  ingest_cmd->add_option("--corpus", ingest.corpus, "Corpus id (TAC, NLAB, ...)")->required();
  ingest_cmd->add_option("--raw", ingest.raw, "Directory of raw <doc_id>.{conllu,md,tex,txt} files")->required();
  ingest_cmd->add_option("--meta", ingest.meta, "Manifest (JSON lines)")->required();
  ingest_cmd->add_option("--out", ingest.out, "Output directory")->required();

  IndexBuildArgs build;
  auto* index_cmd = app.add_subcommand("index", "Build a lemma index");
  index_cmd->require_subcommand(1);
  auto* build_cmd = index_cmd->add_subcommand("build", "Index every <CORPUS>.conllu in a directory");
  build_cmd->add_option("--in", build.in, "Directory with <CORPUS>.conllu and <CORPUS>.manifest.jsonl")->required();
  build_cmd->add_option("--out", build.out, "Index file to write")->required();
  build_cmd->add_option("--corpora", build.corpora, "Comma-separated corpus ids to include");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check an index file (and optionally fixtures)");
  verify_cmd->add_option("--index", verify.index, "Index file")->required();
  verify_cmd->add_option("--fixtures", verify.fixtures, "Fixture directory to parse");

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "Find sentences containing a term");
  search_cmd->add_option("--index", search.index, "Index file")->required();
  search_cmd->add_option("--q", search.q, "Query text")->required();
  search_cmd->add_option("--corpora", search.corpora, "Comma-separated corpus ids (default: all)");
  search_cmd->add_option("--limit", search.limit, "Cards per corpus");
  search_cmd->add_option("--offset", search.offset, "Cards to skip per corpus");
  search_cmd->add_flag("--json", search.json, "Print the API response body");
  search_cmd->add_option("--color", search.color, "auto, always or never")
      ->check(CLI::IsMember({"auto", "always", "never"}));
  search_cmd->add_option("--config", search.config, "Service config file");

  LinkArgs link;
  auto* link_cmd = app.add_subcommand("link", "Look a term up in Wikidata and nLab");
  link_cmd->add_option("--q", link.q, "Term")->required();
  link_cmd->add_option("--index", link.index, "Index file (enables nLab title matching)");
  link_cmd->add_flag("--live", link.live, "Query the endpoint instead of recorded fixtures");
  link_cmd->add_option("--fixtures", link.fixtures, "Recorded response directory");
  link_cmd->add_option("--endpoint", link.endpoint, "SPARQL endpoint URL");
  link_cmd->add_option("--strategy", link.strategy, "server (MINUS clauses) or local (post-filter)")
      ->check(CLI::IsMember({"server", "local"}));
  link_cmd->add_flag("--instance-of", link.instance_of, "Local filtering also drops instances of filter classes");
  link_cmd->add_option("--record", link.record, "Save live responses as fixtures in this directory");
  link_cmd->add_flag("--json", link.json, "Print the API response body");
  link_cmd->add_option("--config", link.config, "Service config file");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score terminology extraction against a silver standard");
  eval_cmd->add_option("--index", eval.index, "Index file")->required();
  eval_cmd->add_option("--gold", eval.gold, "author, titles, or a term file")->required();
  eval_cmd->add_option("--pred", eval.preds, "textrank, mwe, or a term file (repeatable)")->required();
  eval_cmd->add_option("--corpus", eval.corpus, "Corpus to extract from and match in")->capture_default_str();
  eval_cmd->add_option("--pattern", eval.patterns, "MWE UPOS pattern (repeatable)");
  eval_cmd->add_option("--window", eval.textrank.window, "TextRank co-occurrence window")->capture_default_str();
  eval_cmd->add_option("--damping", eval.textrank.damping, "TextRank damping factor")->capture_default_str();
  eval_cmd->add_option("--top-fraction", eval.textrank.top_fraction, "TextRank share of vertices kept")
      ->capture_default_str();
  eval_cmd->add_flag("--json", eval.json, "JSON report");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP JSON API");
  serve_cmd->add_option("--config", serve.config, "Config file");
  serve_cmd->add_option("--index", serve.index, "Index file (overrides config)");
  serve_cmd->add_option("--host", serve.host, "Bind address");
  serve_cmd->add_option("--port", serve.port, "Port (0 picks a free one)");
  serve_cmd->add_flag("--live", serve.live, "Query Wikidata live");
  serve_cmd->add_option("--log-level", serve.log_level, "debug, info, warn or error")
      ->check(CLI::IsMember({"debug", "info", "warn", "error"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const CLI::App* failing = &app;
    for (auto* sub : app.get_subcommands()) failing = sub;
    err << "run 'ctsearch " << (failing == &app ? std::string() : failing->get_name() + " ") << "--help' for usage\n";
    return kExitUsage;
  }

  try {
    if (*ingest_cmd) return cmd_ingest(ingest, out, err);
    if (*build_cmd) return cmd_index_build(build, out, err);
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*search_cmd) return cmd_search(search, out, err);
    if (*link_cmd) return cmd_link(link, out, err);
    if (*eval_cmd) return cmd_eval(eval, out, err);
    if (*serve_cmd) return cmd_serve(serve, out, err);
  } catch (const Exit& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace ctsearch::cli
