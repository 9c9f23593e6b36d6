#include "iqro/session_service.hpp"

#include <httplib.h>

#include <charconv>
#include <json.hpp>
#include <random>
#include <vector>

#include "iqro/error.hpp"
#include "iqro/lesson_engine.hpp"

namespace iqro {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct SessionService::LiveSession {
  std::mutex mu;
  QuizSession session;
  std::string learner;
  std::chrono::steady_clock::time_point last_used;
};

namespace {

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownLesson:
    case ErrorCode::kUnknownItem:
    case ErrorCode::kUnknownSession:
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kLocked:
    case ErrorCode::kSessionFinished:
    case ErrorCode::kSessionInProgress:
      return 409;
    case ErrorCode::kPoolTooSmall:
    case ErrorCode::kBadOption:
    case ErrorCode::kBadConfig:
      return 422;
    case ErrorCode::kBadRequest:
    case ErrorCode::kBadPath:
    case ErrorCode::kSyntax:
    case ErrorCode::kSchema:
      return 400;
    default:
      return 500;
  }
}

HttpResponse json_response(const ordered_json& body, int status = 200) {
  return {status, "application/json", body.dump()};
}

HttpResponse error_response(ErrorCode code, const std::string& message) {
  ordered_json body;
  body["code"] = std::string(to_string(code));
  body["message"] = message;
  return json_response(body, status_for(code));
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  if (!path.empty() && path.front() == '/') start = 1;
  while (start <= path.size()) {
    auto end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    parts.push_back(path.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

bool parse_positive(std::string_view text, int& out) {
  if (text.empty() || text.size() > 9) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::string audio_url(const AssetRef& ref) { return "/" + ref.path; }

std::string new_session_id() {
  static thread_local std::random_device device;
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  for (int word = 0; word < 4; ++word) {
    std::uint32_t bits = device();
    for (int nibble = 0; nibble < 8; ++nibble) {
      id.push_back(kHex[bits & 0xF]);
      bits >>= 4;
    }
  }
  return id;
}

ordered_json question_json(const QuestionView& view, const std::string& session_id) {
  ordered_json q;
  q["number"] = view.number;
  q["total"] = view.total;
  q["mode"] = std::string(to_string(view.mode));
  ordered_json prompt;
  if (view.prompt_audio) prompt["audio_url"] = "/api/quiz/" + session_id + "/prompt";
  if (view.prompt_text) prompt["text"] = *view.prompt_text;
  q["prompt"] = std::move(prompt);
  auto options = ordered_json::array();
  for (std::size_t i = 0; i < view.options.size(); ++i) {
    ordered_json o;
    o["index"] = static_cast<int>(i);
    o["display"] = view.options[i].display;
    options.push_back(std::move(o));
  }
  q["options"] = std::move(options);
  return q;
}

ordered_json result_json(const QuizResult& result) {
  ordered_json r;
  r["correct_count"] = result.correct_count;
  r["total"] = result.total;
  r["mastered"] = result.mastered;
  return r;
}

ordered_json config_json(const QuizConfig& config) {
  ordered_json c;
  c["num_questions"] = config.num_questions;
  c["num_options"] = config.num_options;
  c["mode"] = std::string(to_string(config.mode));
  c["seed"] = config.seed;
  c["mastery_threshold"] = config.mastery_threshold;
  return c;
}

// Body fields with the wrong JSON type are a malformed request; well-typed
// but out-of-range values are a bad config (422).
QuizConfig config_from_json(const json& j) {
  QuizConfig config;
  std::random_device device;
  config.seed = (std::uint64_t{device()} << 32) | device();
  if (j.is_null()) return config;
  if (!j.is_object()) throw Error(ErrorCode::kBadRequest, "config must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "num_questions" || key == "num_options") {
      if (!value.is_number_integer()) throw Error(ErrorCode::kBadRequest, key + " must be an integer");
      const auto v = value.get<std::int64_t>();
      if (v < 0 || v > 10'000) throw Error(ErrorCode::kBadConfig, key + " out of range");
      (key == "num_questions" ? config.num_questions : config.num_options) = static_cast<int>(v);
    } else if (key == "mode") {
      if (!value.is_string()) throw Error(ErrorCode::kBadRequest, "mode must be a string");
      config.mode = parse_quiz_mode(value.get<std::string>());
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        throw Error(ErrorCode::kBadRequest, "seed must be a non-negative integer");
      }
      config.seed = value.get<std::uint64_t>();
    } else if (key == "mastery_threshold") {
      if (!value.is_number()) throw Error(ErrorCode::kBadRequest, "mastery_threshold must be a number");
      config.mastery_threshold = value.get<double>();
    } else {
      throw Error(ErrorCode::kBadRequest, "unknown config field '" + key + "'");
    }
  }
  check_config(config);
  return config;
}

json parse_body(std::string_view body) {
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw Error(ErrorCode::kBadRequest, "request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kBadRequest, std::string("malformed JSON body: ") + e.what());
  }
}

int required_int(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_number_integer()) {
    throw Error(ErrorCode::kBadRequest, std::string(key) + " must be an integer");
  }
  const auto v = body[key].get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw Error(ErrorCode::kBadRequest, std::string(key) + " out of range");
  }
  return static_cast<int>(v);
}

}  // namespace

std::string_view content_type_for(std::string_view path) {
  const auto dot = path.rfind('.');
  const auto ext = dot == std::string_view::npos ? std::string_view{} : path.substr(dot + 1);
  if (ext == "wav") return "audio/wav";
  if (ext == "mp3") return "audio/mpeg";
  if (ext == "ogg" || ext == "oga") return "audio/ogg";
  if (ext == "m4a") return "audio/mp4";
  if (ext == "png") return "image/png";
  if (ext == "jpg" || ext == "jpeg") return "image/jpeg";
  if (ext == "svg") return "image/svg+xml";
  return "application/octet-stream";
}

HostPort parse_bind_address(std::string_view address) {
  const auto colon = address.rfind(':');
  int port = 0;
  if (colon == std::string_view::npos || colon == 0 ||
      !parse_positive(address.substr(colon + 1), port) || port > 65535) {
    throw Error(ErrorCode::kBadRequest, "bind address must be host:port, got '" +
                                            std::string(address) + "'");
  }
  return {std::string(address.substr(0, colon)), port};
}

SessionService::SessionService(PackDir pack, ServiceConfig config, Clock clock)
    : pack_(std::move(pack)), config_(std::move(config)), clock_(std::move(clock)) {
  if (!pack_.report.loadable()) {
    throw Error(ErrorCode::kSchema,
                "pack has " + std::to_string(pack_.report.errors.size()) +
                    " validation error(s); first: " + pack_.report.errors.front().code + " at " +
                    pack_.report.errors.front().path);
  }
  if (!clock_) clock_ = [] { return std::chrono::steady_clock::now(); };
}

SessionService::~SessionService() = default;

std::size_t SessionService::live_sessions() const {
  std::lock_guard lock(sessions_mu_);
  return sessions_.size();
}

HttpResponse SessionService::handle(std::string_view method, std::string_view path,
                                    std::string_view body) const {
  try {
    const auto parts = split_path(path);
    const bool get = method == "GET";
    const bool post = method == "POST";
    const auto n = parts.size();

    if (n >= 2 && parts[0] == "assets") {
      if (!get) return error_response(ErrorCode::kBadRequest, "method not allowed");
      return get_asset(path.substr(path.find("assets/") + 7));
    }
    if (n >= 2 && parts[0] == "api") {
      if (n == 2 && parts[1] == "pack" && get) return get_pack();
      if (n == 2 && parts[1] == "alphabet" && get) return get_alphabet();
      if (n == 7 && parts[1] == "volumes" && parts[3] == "lessons" && parts[5] == "pages" && get) {
        int v = 0, l = 0, p = 0;
        if (!parse_positive(parts[2], v) || !parse_positive(parts[4], l) ||
            !parse_positive(parts[6], p)) {
          return error_response(ErrorCode::kUnknownLesson, "page coordinates must be integers");
        }
        return get_page(v, l, p);
      }
      if (n == 2 && parts[1] == "quiz" && post) return post_quiz(body);
      if (n == 3 && parts[1] == "quiz" && get) return get_quiz(std::string(parts[2]));
      if (n == 4 && parts[1] == "quiz" && parts[3] == "prompt" && get) {
        return get_quiz_prompt(std::string(parts[2]));
      }
      if (n == 4 && parts[1] == "quiz" && parts[3] == "answer" && post) {
        return post_answer(std::string(parts[2]), body);
      }
      if (n == 3 && parts[1] == "progress" && get) return get_progress(std::string(parts[2]));
    }
    return error_response(ErrorCode::kNotFound,
                          "no route for " + std::string(method) + " " + std::string(path));
  } catch (const Error& e) {
    return error_response(e.code(), e.what());
  } catch (const std::exception& e) {
    return error_response(ErrorCode::kIo, e.what());
  }
}

HttpResponse SessionService::get_pack() const {
  const ContentPack& p = pack();
  ordered_json root;
  root["format_version"] = p.format_version;
  root["title"] = p.title;
  root["about"] = p.about;
  root["how_to"] = p.how_to;
  auto volumes = ordered_json::array();
  for (const auto& volume : p.volumes) {
    ordered_json v;
    v["index"] = volume.index;
    v["title"] = volume.title;
    auto lessons = ordered_json::array();
    for (std::size_t l = 0; l < volume.lessons.size(); ++l) {
      ordered_json lj;
      lj["ordinal"] = static_cast<int>(l + 1);
      lj["id"] = volume.lessons[l].id;
      lj["title"] = volume.lessons[l].title;
      lj["page_count"] = static_cast<int>(volume.lessons[l].pages.size());
      lessons.push_back(std::move(lj));
    }
    v["lessons"] = std::move(lessons);
    volumes.push_back(std::move(v));
  }
  root["volumes"] = std::move(volumes);
  return json_response(root);
}

HttpResponse SessionService::get_alphabet() const {
  auto letters = ordered_json::array();
  for (const auto& entry : alphabet_chart(pack())) {
    ordered_json e;
    e["key"] = entry.key;
    e["text"] = entry.text;
    e["translit"] = entry.translit;
    e["audio"] = entry.audio.path;
    e["audio_url"] = audio_url(entry.audio);
    letters.push_back(std::move(e));
  }
  ordered_json root;
  root["alphabet"] = std::move(letters);
  return json_response(root);
}

HttpResponse SessionService::get_page(int volume, int lesson, int page) const {
  const Page& grid = page_at(pack(), volume, lesson, page);
  const Lesson& l = lesson_at(pack(), volume, lesson);
  ordered_json root;
  root["volume"] = volume;
  root["lesson"] = lesson;
  root["page"] = page;
  root["page_count"] = static_cast<int>(l.pages.size());
  root["lesson_id"] = l.id;
  root["title"] = l.title;
  auto rows = ordered_json::array();
  for (const auto& row : grid.rows) {
    auto cells = ordered_json::array();
    for (const auto& id : row) {
      const GlyphItem& item = lookup_item(pack(), id);
      ordered_json c;
      c["id"] = item.id;
      c["text"] = item.text;
      c["translit"] = item.translit;
      c["audio"] = item.audio.path;
      c["audio_url"] = audio_url(item.audio);
      cells.push_back(std::move(c));
    }
    rows.push_back(std::move(cells));
  }
  root["rows"] = std::move(rows);
  return json_response(root);
}

HttpResponse SessionService::post_quiz(std::string_view body) const {
  const json request = parse_body(body);
  const LessonRef ref{required_int(request, "volume"), required_int(request, "lesson")};
  std::string learner = "guest";
  if (request.contains("learner")) {
    if (!request["learner"].is_string()) throw Error(ErrorCode::kBadRequest, "learner must be a string");
    learner = request["learner"].get<std::string>();
  }
  const auto progress_file = progress_path(config_.data_dir, learner);
  lesson_at(pack(), ref);
  const QuizConfig config = config_from_json(request.contains("config") ? request["config"] : json());

  {
    std::lock_guard lock(learner_mutex(learner));
    if (!is_unlocked(load_progress(progress_file), pack(), ref)) {
      throw Error(ErrorCode::kLocked, "lesson is locked until the previous lesson is mastered");
    }
  }

  auto live = std::make_shared<LiveSession>();
  live->session = start_quiz(pack(), ref, config, new_session_id());
  live->learner = learner;
  live->last_used = clock_();
  const std::string id = live->session.session_id;
  ordered_json root;
  root["session_id"] = id;
  root["volume"] = ref.volume;
  root["lesson"] = ref.lesson;
  root["learner"] = learner;
  root["config"] = config_json(config);
  root["question"] = question_json(current_question(live->session), id);

  evict_idle();
  {
    std::lock_guard lock(sessions_mu_);
    sessions_.emplace(id, std::move(live));
  }
  return json_response(root, 201);
}

std::shared_ptr<SessionService::LiveSession> SessionService::find_session(
    const std::string& id) const {
  evict_idle();
  std::lock_guard lock(sessions_mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::kUnknownSession, "no quiz session '" + id + "'");
  }
  return it->second;
}

void SessionService::evict_idle() const {
  const auto now = clock_();
  std::lock_guard lock(sessions_mu_);
  std::erase_if(sessions_, [&](const auto& kv) {
    std::unique_lock session_lock(kv.second->mu, std::try_to_lock);
    return session_lock.owns_lock() && now - kv.second->last_used > config_.session_idle_ttl;
  });
}

std::mutex& SessionService::learner_mutex(const std::string& learner) const {
  std::lock_guard lock(learners_mu_);
  auto& slot = learner_mus_[learner];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

HttpResponse SessionService::get_quiz(const std::string& id) const {
  auto live = find_session(id);
  std::lock_guard lock(live->mu);
  live->last_used = clock_();
  ordered_json root;
  root["session_id"] = id;
  root["volume"] = live->session.lesson_ref.volume;
  root["lesson"] = live->session.lesson_ref.lesson;
  root["answered"] = live->session.cursor();
  const bool finished = live->session.state() == QuizState::kFinished;
  root["finished"] = finished;
  if (finished) {
    root["result"] = result_json(finish(live->session));
  } else {
    root["question"] = question_json(current_question(live->session), id);
  }
  return json_response(root);
}

HttpResponse SessionService::get_quiz_prompt(const std::string& id) const {
  auto live = find_session(id);
  std::lock_guard lock(live->mu);
  live->last_used = clock_();
  const QuestionView view = current_question(live->session);
  if (!view.prompt_audio) {
    return error_response(ErrorCode::kNotFound, "current question has no audio prompt");
  }
  const std::string& path = view.prompt_audio->path;
  return {200, std::string(content_type_for(path)), read_file(pack_.root / path)};
}

HttpResponse SessionService::post_answer(const std::string& id, std::string_view body) const {
  auto live = find_session(id);
  const json request = parse_body(body);
  const int chosen = required_int(request, "chosen_index");

  std::lock_guard lock(live->mu);
  live->last_used = clock_();
  auto [feedback, next] = submit_answer(live->session, chosen);

  ordered_json root;
  root["verdict"] = feedback.verdict == Verdict::kCorrect ? "correct" : "wrong";
  root["message_key"] = feedback.message_key;
  root["message"] = std::string(render_message(feedback.message_key));
  ordered_json correct;
  correct["index"] = next.questions[next.cursor() - 1].correct_index;
  correct["id"] = feedback.correct_option.id;
  correct["display"] = feedback.correct_option.display;
  root["correct_option"] = std::move(correct);

  if (next.state() == QuizState::kFinished) {
    const QuizResult result = finish(next);
    const auto file = progress_path(config_.data_dir, live->learner);
    {
      std::lock_guard learner_lock(learner_mutex(live->learner));
      auto progress = load_progress(file);
      progress.learner = live->learner;
      save_progress(record_result(progress, next.lesson_ref, result, next.config.seed), file);
    }
    root["result"] = result_json(result);
  } else {
    root["next_question"] = question_json(current_question(next), id);
  }
  live->session = std::move(next);
  return json_response(root);
}

HttpResponse SessionService::get_progress(const std::string& learner) const {
  const auto file = progress_path(config_.data_dir, learner);
  ProgressRecord record;
  {
    std::lock_guard lock(learner_mutex(learner));
    record = load_progress(file);
  }
  record.learner = learner;
  auto root = ordered_json::parse(progress_to_json(record));
  auto lessons = ordered_json::array();
  for (const auto& ref : all_lessons(pack())) {
    ordered_json l;
    l["volume"] = ref.volume;
    l["lesson"] = ref.lesson;
    l["unlocked"] = is_unlocked(record, pack(), ref);
    auto it = record.entries.find(ref);
    l["mastered"] = it != record.entries.end() && it->second.mastered;
    lessons.push_back(std::move(l));
  }
  root["lessons"] = std::move(lessons);
  return json_response(root);
}

HttpResponse SessionService::get_asset(std::string_view rest) const {
  const std::string relative = "assets/" + std::string(rest);
  if (auto problem = asset_path_problem(relative); !problem.empty()) {
    return error_response(ErrorCode::kBadPath, "rejected asset path: " + problem);
  }
  if (!pack_.asset_listing.contains(relative)) {
    return error_response(ErrorCode::kNotFound, "no asset '" + relative + "'");
  }
  return {200, std::string(content_type_for(relative)), read_file(pack_.root / relative)};
}

void SessionService::mount(httplib::Server& server) const {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse out = handle(req.method, req.path, req.body);
    res.status = out.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(out.body, out.content_type);
  };
  server.Get(".*", forward);
  server.Post(".*", forward);
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

bool SessionService::run() {
  const HostPort address = parse_bind_address(config_.bind_address);
  server_ = std::make_unique<httplib::Server>();
  mount(*server_);
  return server_->listen(address.host, address.port);
}

void SessionService::stop() {
  if (server_) server_->stop();
}

}  // namespace iqro
