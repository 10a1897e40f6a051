#pragma once

#include "knotty/error.hpp"
#include "knotty/game.hpp"
#include "knotty/invariants.hpp"
#include "knotty/serialization.hpp"

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace knotty {

/// What gets written to `<id>.json`. The snapshot always carries provenance;
/// the API strips it unless the service runs in debug mode.
struct SessionRecord {
  std::string id;
  GameConfig config;
  std::vector<TurnSubmission> log;
  Json snapshot;
  std::int64_t created_ms = 0;
  std::int64_t updated_ms = 0;
};

inline Json session_record_to_json(const SessionRecord &r) {
  Json log = Json::array();
  for (const auto &t : r.log)
    log.push_back(submission_to_json(t));
  return Json{{"id", r.id},           {"config", game_config_to_json(r.config)},
              {"log", log},           {"snapshot", r.snapshot},
              {"createdMs", r.created_ms}, {"updatedMs", r.updated_ms}};
}

inline SessionRecord session_record_from_json(const Json &j) {
  SessionRecord r;
  r.id = detail::field<std::string>(j, "id");
  r.config = game_config_from_json(detail::field<Json>(j, "config"));
  r.log = script_from_json(detail::field<Json>(j, "log"));
  r.snapshot = detail::field<Json>(j, "snapshot");
  r.created_ms = detail::field_or<std::int64_t>(j, "createdMs", 0);
  r.updated_ms = detail::field_or<std::int64_t>(j, "updatedMs", 0);
  return r;
}

/// Thrown for conditions that are HTTP-level rather than domain errors.
struct HttpFailure : std::runtime_error {
  HttpFailure(int status, std::string error, const std::string &message)
      : std::runtime_error(message), status(status), error(std::move(error)) {}
  int status;
  std::string error;
};

inline int http_status_for(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Syntax:
  case ErrorKind::Protocol:
    return 400;
  case ErrorKind::BudgetExceeded:
    return 503;
  case ErrorKind::Transport:
    return 502;
  case ErrorKind::CorruptSession:
    return 404;
  default:
    return 422;
  }
}

struct LoadReport {
  int loaded = 0;
  std::vector<std::string> quarantined;
};

/// Game sessions backed by one JSON file each. Turns on one session are
/// serialized; a turn that is already running makes a second one fail with 409.
class GameService {
public:
  GameService(std::filesystem::path data_dir, std::shared_ptr<const JonesOracle> oracle, bool debug = false)
      : dir_(std::move(data_dir)), oracle_(std::move(oracle)), debug_(debug), rng_(std::random_device{}()) {
    std::filesystem::create_directories(dir_);
  }

  const JonesOracle &oracle() const { return *oracle_; }
  bool debug() const { return debug_; }
  const std::filesystem::path &data_dir() const { return dir_; }

  /// Reloads every `<id>.json`, re-deriving each snapshot by replay. Files
  /// that fail to parse or replay differently are renamed to `.corrupt`.
  LoadReport load() {
    LoadReport report;
    std::vector<std::filesystem::path> files;
    for (const auto &entry : std::filesystem::directory_iterator(dir_))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto &path : files) {
      const std::string id = path.stem().string();
      try {
        auto entry = std::make_shared<Entry>(verify(read_record(path), id));
        auto session = std::make_shared<Session>();
        session->current = std::move(entry);
        std::unique_lock lock(sessions_mutex_);
        sessions_[id] = std::move(session);
        ++report.loaded;
      } catch (const std::exception &) {
        std::error_code ec;
        std::filesystem::rename(path, std::filesystem::path(path).replace_extension(".corrupt"), ec);
        std::unique_lock lock(sessions_mutex_);
        quarantined_.insert(id);
        report.quarantined.push_back(id);
      }
    }
    return report;
  }

  /// Body is `{"config": {...}}` or a bare config; empty means defaults. A
  /// config without a seed gets a random one, recorded in the session.
  Json create(const Json &body) {
    Json config_json = body.is_object() && body.contains("config") ? body["config"] : body;
    if (config_json.is_null())
      config_json = Json::object();
    if (!config_json.is_object())
      fail(ErrorKind::Syntax, "game config must be a JSON object");
    if (!config_json.contains("seed")) {
      std::lock_guard lock(rng_mutex_);
      config_json["seed"] = rng_();
    }
    const GameConfig config = game_config_from_json(config_json);
    GameState state = new_game(config, *oracle_);

    auto entry = std::make_shared<Entry>();
    entry->record.config = config;
    entry->record.created_ms = entry->record.updated_ms = now_ms();
    entry->record.snapshot = game_state_to_json(config, state, true);
    entry->state = std::move(state);

    auto session = std::make_shared<Session>();
    {
      std::unique_lock lock(sessions_mutex_);
      entry->record.id = fresh_id();
      session->current = entry;
      write_record(entry->record);
      sessions_[entry->record.id] = session;
    }
    return reply(*entry);
  }

  Json get(const std::string &id) const { return reply(*snapshot_of(id)); }

  Json submit(const std::string &id, const Json &body) {
    auto session = find(id);
    std::unique_lock turn(session->turn_mutex, std::try_to_lock);
    if (!turn.owns_lock())
      throw HttpFailure(409, "Conflict", "a turn is already in progress for session " + id);
    const auto current = session->load();
    const TurnSubmission submission = submission_from_json(body);
    GameState next = play_turn(current->record.config, current->state, submission, *oracle_);

    auto entry = std::make_shared<Entry>();
    entry->record = current->record;
    entry->record.log.push_back(submission);
    entry->record.updated_ms = now_ms();
    entry->record.snapshot = game_state_to_json(entry->record.config, next, true);
    entry->state = std::move(next);
    write_record(entry->record);
    session->store(entry);
    return reply(*entry);
  }

  Json moves(const std::string &id) const {
    return site_list_to_json(enumerate_moves(snapshot_of(id)->state.player));
  }

  Json evaluate(const Json &body) const {
    const PdCode code = body.is_string() ? parse_pd(body.get<std::string>()) : pd_from_json(body);
    return poly_to_json(oracle_->evaluate(build_diagram(code)));
  }

  SessionRecord record(const std::string &id) const { return snapshot_of(id)->record; }

  std::vector<std::string> ids() const {
    std::shared_lock lock(sessions_mutex_);
    std::vector<std::string> out;
    for (const auto &[id, s] : sessions_)
      out.push_back(id);
    return out;
  }

private:
  struct Entry {
    SessionRecord record;
    GameState state;
  };

  struct Session {
    std::mutex turn_mutex;
    mutable std::mutex pointer_mutex;
    std::shared_ptr<const Entry> current;

    std::shared_ptr<const Entry> load() const {
      std::lock_guard lock(pointer_mutex);
      return current;
    }
    void store(std::shared_ptr<const Entry> e) {
      std::lock_guard lock(pointer_mutex);
      current = std::move(e);
    }
  };

  static std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
        .count();
  }

  Json reply(const Entry &e) const {
    Json snapshot = e.record.snapshot;
    if (!debug_ && snapshot.contains("opponent")) {
      snapshot["opponent"].erase("provenance");
      if (!e.record.config.show_opponent_diagram)
        snapshot["opponent"].erase("pd");
    }
    return Json{{"id", e.record.id}, {"snapshot", snapshot}};
  }

  std::shared_ptr<Session> find(const std::string &id) const {
    std::shared_lock lock(sessions_mutex_);
    if (auto it = sessions_.find(id); it != sessions_.end())
      return it->second;
    if (quarantined_.count(id))
      throw HttpFailure(404, std::string(error_name(ErrorKind::CorruptSession)), "session " + id + " is quarantined");
    throw HttpFailure(404, "NotFound", "no session " + id);
  }

  std::shared_ptr<const Entry> snapshot_of(const std::string &id) const { return find(id)->load(); }

  // Caller holds sessions_mutex_.
  std::string fresh_id() {
    std::lock_guard lock(rng_mutex_);
    for (;;) {
      std::ostringstream os;
      os << std::hex;
      os.width(16);
      os.fill('0');
      os << rng_();
      std::string id = os.str();
      if (!sessions_.count(id) && !quarantined_.count(id) && !std::filesystem::exists(dir_ / (id + ".json")))
        return id;
    }
  }

  void write_record(const SessionRecord &r) const {
    const auto target = dir_ / (r.id + ".json");
    const auto tmp = dir_ / (r.id + ".json.tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << session_record_to_json(r).dump(2) << '\n';
      out.flush();
      if (!out)
        throw HttpFailure(500, "IoError", "cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
  }

  static SessionRecord read_record(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    const Json j = Json::parse(buf.str(), nullptr, false);
    if (j.is_discarded())
      fail(ErrorKind::CorruptSession, path.string() + " is not valid JSON");
    return session_record_from_json(j);
  }

  Entry verify(SessionRecord record, const std::string &id) const {
    if (record.id != id)
      fail(ErrorKind::CorruptSession, "file name does not match session id " + record.id);
    GameState state = replay_game(record.config, record.log, *oracle_);
    if (game_state_to_json(record.config, state, true) != record.snapshot)
      fail(ErrorKind::CorruptSession, "session " + id + " does not replay to its stored snapshot");
    return Entry{std::move(record), std::move(state)};
  }

  std::filesystem::path dir_;
  std::shared_ptr<const JonesOracle> oracle_;
  bool debug_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::set<std::string> quarantined_;
  std::mutex rng_mutex_;
  std::mt19937_64 rng_;
};

namespace detail {

inline void send_json(httplib::Response &res, int status, const Json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

inline void send_error(httplib::Response &res, int status, const std::string &error, const std::string &message) {
  send_json(res, status, Json{{"error", error}, {"message", message}});
}

template <typename F> void guarded(httplib::Response &res, F &&handler) {
  try {
    handler();
  } catch (const HttpFailure &e) {
    send_error(res, e.status, e.error, e.what());
  } catch (const Error &e) {
    send_error(res, http_status_for(e.kind()), std::string(e.name()), e.what());
  } catch (const std::exception &e) {
    send_error(res, 500, "InternalError", e.what());
  }
}

inline Json body_json(const httplib::Request &req) {
  if (req.body.empty())
    return Json();
  Json j = Json::parse(req.body, nullptr, false);
  if (j.is_discarded())
    fail(ErrorKind::Syntax, "request body is not valid JSON");
  return j;
}

} // namespace detail

/// Registers the HTTP API on `server`.
inline void install_routes(httplib::Server &server, GameService &service) {
  using detail::guarded;
  using detail::send_json;

  server.Get("/healthz", [](const httplib::Request &, httplib::Response &res) {
    send_json(res, 200, Json{{"status", "ok"}});
  });

  server.Post("/games", [&service](const httplib::Request &req, httplib::Response &res) {
    guarded(res, [&] { send_json(res, 201, service.create(detail::body_json(req))); });
  });

  server.Get(R"(/games/([^/]+))", [&service](const httplib::Request &req, httplib::Response &res) {
    guarded(res, [&] { send_json(res, 200, service.get(req.matches[1])); });
  });

  server.Post(R"(/games/([^/]+)/turns)", [&service](const httplib::Request &req, httplib::Response &res) {
    guarded(res, [&] { send_json(res, 200, service.submit(req.matches[1], detail::body_json(req))); });
  });

  server.Get(R"(/games/([^/]+)/moves)", [&service](const httplib::Request &req, httplib::Response &res) {
    guarded(res, [&] { send_json(res, 200, service.moves(req.matches[1])); });
  });

  server.Post("/jones", [&service](const httplib::Request &req, httplib::Response &res) {
    guarded(res, [&] { send_json(res, 200, service.evaluate(detail::body_json(req))); });
  });

  // Lets a browser client served from elsewhere talk to the API.
  server.set_post_routing_handler([](const httplib::Request &, httplib::Response &res) {
    res.set_header("Access-Control-Allow-Origin", "*");
  });
  server.Options(R"(.*)", [](const httplib::Request &, httplib::Response &res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  const unsigned workers = std::max(8u, 2 * std::thread::hardware_concurrency());
  server.new_task_queue = [workers] { return new httplib::ThreadPool(workers); };
}

} // namespace knotty
