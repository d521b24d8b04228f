#pragma once

#include <memory>
#include <mutex>
#include <string>

#include "ctsearch/service/api.hpp"
#include "ctsearch/service/config.hpp"

namespace httplib {
class Server;
}

namespace ctsearch::service {

/// HTTP front end for the API handlers. /api/health answers 503 until a
/// context is installed.
class ApiServer {
 public:
  explicit ApiServer(ApiConfig config, std::shared_ptr<linker::SparqlTransport> transport = nullptr);
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds config.host:config.port (port 0 picks a free port) and returns the
  /// bound port. Throws Error(kIo) when binding fails.
  int bind();

  /// Serves until stop(). Requires bind().
  void run();
  /// Safe from any thread, also before run() has started listening; a run()
  /// that begins after stop() returns immediately.
  void stop();
  bool is_running() const;
  void wait_until_ready() const;

  /// Loads config.index_path and installs a context. Throws on load failure.
  void load_index();
  void install(std::shared_ptr<const index::IndexedCorpus> corpus);

  int port() const { return port_; }
  std::shared_ptr<const ApiContext> context() const;

 private:
  void register_routes();
  void apply_cors(const std::string& origin, void* response) const;

  ApiConfig config_;
  std::shared_ptr<linker::SparqlTransport> transport_;
  std::unique_ptr<httplib::Server> server_;
  mutable std::mutex context_mutex_;
  std::shared_ptr<const ApiContext> context_;
  int port_ = -1;
  std::mutex run_mutex_;
  bool run_started_ = false;
  bool stop_requested_ = false;
};

}  // namespace ctsearch::service
