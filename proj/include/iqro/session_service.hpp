#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "iqro/pack_dir.hpp"
#include "iqro/progress_store.hpp"
#include "iqro/quiz_engine.hpp"

namespace httplib {
class Server;
}

namespace iqro {

inline constexpr const char* kDefaultBindAddress = "127.0.0.1:7423";

struct ServiceConfig {
  std::filesystem::path pack_path;
  std::filesystem::path data_dir = "data";
  std::string bind_address = kDefaultBindAddress;
  std::chrono::seconds session_idle_ttl = std::chrono::hours(24);
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

struct HostPort {
  std::string host;
  int port = 0;
};

// "host:port". Throws Error(kBadRequest).
HostPort parse_bind_address(std::string_view address);

// Local HTTP/JSON facade over one immutable pack. All mutable state is the
// in-memory quiz table and the per-learner progress files. Requests may
// arrive concurrently; work on one session, and progress writes for one
// learner, are serialized.
class SessionService {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  // Refuses (Error(kSchema)) a pack whose validation report has errors.
  SessionService(PackDir pack, ServiceConfig config, Clock clock = {});
  ~SessionService();

  SessionService(const SessionService&) = delete;
  SessionService& operator=(const SessionService&) = delete;

  // Transport-independent request dispatch. `path` excludes the query string.
  HttpResponse handle(std::string_view method, std::string_view path,
                      std::string_view body) const;

  // Registers every route on the server, delegating to handle().
  void mount(httplib::Server& server) const;

  // Binds config.bind_address and serves until stop() or process exit.
  // Returns false when the address cannot be bound.
  bool run();
  void stop();

  const ContentPack& pack() const { return pack_.pack; }
  const ServiceConfig& config() const { return config_; }
  std::size_t live_sessions() const;

 private:
  struct LiveSession;

  HttpResponse get_pack() const;
  HttpResponse get_alphabet() const;
  HttpResponse get_page(int volume, int lesson, int page) const;
  HttpResponse post_quiz(std::string_view body) const;
  HttpResponse get_quiz(const std::string& id) const;
  HttpResponse get_quiz_prompt(const std::string& id) const;
  HttpResponse post_answer(const std::string& id, std::string_view body) const;
  HttpResponse get_progress(const std::string& learner) const;
  HttpResponse get_asset(std::string_view rest) const;

  std::shared_ptr<LiveSession> find_session(const std::string& id) const;
  std::mutex& learner_mutex(const std::string& learner) const;
  void evict_idle() const;

  PackDir pack_;
  ServiceConfig config_;
  Clock clock_;

  mutable std::mutex sessions_mu_;
  mutable std::map<std::string, std::shared_ptr<LiveSession>> sessions_;
  mutable std::mutex learners_mu_;
  mutable std::map<std::string, std::unique_ptr<std::mutex>> learner_mus_;

  std::unique_ptr<httplib::Server> server_;
};

// Content type for an asset by extension; application/octet-stream when
// unknown.
std::string_view content_type_for(std::string_view path);

}  // namespace iqro
