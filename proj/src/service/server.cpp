#include "ctsearch/service/server.hpp"

#include <algorithm>
#include <chrono>

#include <httplib.h>

#include "ctsearch/error.hpp"
#include "ctsearch/index/persist.hpp"
#include "ctsearch/service/log.hpp"

namespace ctsearch::service {

namespace {

constexpr const char* kJson = "application/json; charset=utf-8";

QueryParams to_params(const httplib::Request& req) {
  return QueryParams(req.params.begin(), req.params.end());
}

void write(httplib::Response& res, const ApiResponse& r) {
  res.status = r.status;
  res.set_content(r.body.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace), kJson);
}

}  // namespace

ApiServer::ApiServer(ApiConfig config, std::shared_ptr<linker::SparqlTransport> transport)
    : config_(std::move(config)), transport_(std::move(transport)), server_(std::make_unique<httplib::Server>()) {
  server_->new_task_queue = [threads = config_.threads] {
    return new httplib::ThreadPool(static_cast<std::size_t>(threads < 1 ? 1 : threads));
  };
  register_routes();
}

ApiServer::~ApiServer() { stop(); }

std::shared_ptr<const ApiContext> ApiServer::context() const {
  std::lock_guard lock(context_mutex_);
  return context_;
}

void ApiServer::install(std::shared_ptr<const index::IndexedCorpus> corpus) {
  auto ctx = std::make_shared<const ApiContext>(config_, std::move(corpus), transport_);
  std::lock_guard lock(context_mutex_);
  context_ = std::move(ctx);
}

void ApiServer::load_index() {
  auto start = std::chrono::steady_clock::now();
  auto corpus = std::make_shared<index::IndexedCorpus>(index::load_index(config_.index_path));
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  log_event(LogLevel::kInfo, "index_loaded",
            {{"path", config_.index_path.string()},
             {"lemmas", corpus->index.manifest().lemma_count},
             {"tokens", corpus->index.manifest().token_count},
             {"ms", ms.count()}});
  install(std::move(corpus));
}

void ApiServer::apply_cors(const std::string& origin, void* response) const {
  auto& res = *static_cast<httplib::Response*>(response);
  if (origin.empty() || config_.cors_origins.empty()) return;
  bool any = std::find(config_.cors_origins.begin(), config_.cors_origins.end(), "*") != config_.cors_origins.end();
  bool listed = std::find(config_.cors_origins.begin(), config_.cors_origins.end(), origin) != config_.cors_origins.end();
  if (!any && !listed) return;
  res.set_header("Access-Control-Allow-Origin", any ? "*" : origin);
  res.set_header("Vary", "Origin");
  res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
  res.set_header("Access-Control-Allow-Headers", "Content-Type");
}

void ApiServer::register_routes() {
  const std::string mode(linker::to_string(config_.wikidata.mode));

  server_->set_post_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
    apply_cors(req.get_header_value("Origin"), &res);
  });

  server_->Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server_->Get("/api/health", [this, mode](const httplib::Request&, httplib::Response& res) {
    auto ctx = context();
    write(res, handle_health(ctx.get(), mode));
  });

  auto with_context = [this](auto handler) {
    return [this, handler](const httplib::Request& req, httplib::Response& res) {
      auto ctx = context();
      if (!ctx) {
        write(res, {503, error_body("Unavailable", "index is not loaded")});
        return;
      }
      write(res, handler(*ctx, to_params(req)));
    };
  };
  server_->Get("/api/search", with_context([](const ApiContext& c, const QueryParams& p) { return handle_search(c, p); }));
  server_->Get("/api/link", with_context([](const ApiContext& c, const QueryParams& p) { return handle_link(c, p); }));

  server_->set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    res.set_content(error_body("NotFound", "no such endpoint").dump(), kJson);
    return httplib::Server::HandlerResponse::Handled;
  });

  server_->set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    log_event(LogLevel::kError, "handler_exception", {{"message", what}});
    write(res, {500, error_body("Internal", what)});
  });

  server_->set_logger([](const httplib::Request& req, const httplib::Response& res) {
    log_event(LogLevel::kInfo, "request",
              {{"method", req.method}, {"path", req.path}, {"status", res.status}, {"bytes", res.body.size()}});
  });
}

int ApiServer::bind() {
  if (config_.port == 0) {
    port_ = server_->bind_to_any_port(config_.host);
  } else {
    port_ = server_->bind_to_port(config_.host, config_.port) ? config_.port : -1;
  }
  if (port_ < 0) {
    throw Error(ErrorCode::kIo, "cannot bind " + config_.host + ":" + std::to_string(config_.port));
  }
  return port_;
}

void ApiServer::run() {
  {
    std::lock_guard lock(run_mutex_);
    if (stop_requested_) return;
    run_started_ = true;
  }
  log_event(LogLevel::kInfo, "listening", {{"host", config_.host}, {"port", port_}});
  server_->listen_after_bind();
}

void ApiServer::stop() {
  bool started = false;
  {
    std::lock_guard lock(run_mutex_);
    stop_requested_ = true;
    started = run_started_;
  }
  if (!started || !server_) return;
  // httplib ignores stop() until its accept loop is up.
  server_->wait_until_ready();
  server_->stop();
}

bool ApiServer::is_running() const { return server_->is_running(); }

void ApiServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace ctsearch::service
