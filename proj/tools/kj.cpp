// kj: command-line front end for the knot engine, the opponent generator,
// scripted games and the HTTP service.

#include "knotty/bench.hpp"
#include "knotty/game.hpp"
#include "knotty/remote_oracle.hpp"
#include "knotty/service.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iomanip>
#include <sstream>

namespace {

using namespace knotty;

// Exit codes: 2 malformed input, 3 rejected by the rules of the game,
// 4 evaluation budget exceeded, 5 I/O or transport failure, 1 anything else.
int exit_code_for(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Syntax:
  case ErrorKind::Validation:
  case ErrorKind::Protocol:
  case ErrorKind::InvalidConfig:
  case ErrorKind::CorruptSession:
    return 2;
  case ErrorKind::InapplicableMove:
  case ErrorKind::CrossingCapExceeded:
  case ErrorKind::BudgetViolation:
  case ErrorKind::GameOver:
  case ErrorKind::VariableMismatch:
  case ErrorKind::GenerationExhausted:
  case ErrorKind::NonKnotExponent:
    return 3;
  case ErrorKind::BudgetExceeded:
    return 4;
  case ErrorKind::Transport:
    return 5;
  }
  return 1;
}

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void report(const std::string &error, const std::string &message) {
  std::cerr << Json{{"error", error}, {"message", message}}.dump() << std::endl;
}

std::string read_input(const std::string &path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoFailure("cannot read " + path);
  buf << in.rdbuf();
  return buf.str();
}

Json parse_json(const std::string &text, const std::string &what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded())
    fail(ErrorKind::Syntax, what + " is not valid JSON");
  return j;
}

/// Inline JSON if the argument looks like JSON, otherwise a file path.
Json json_argument(const std::string &arg, const std::string &what) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
    return parse_json(arg, what);
  return parse_json(read_input(arg), what);
}

std::string env_or(const char *name, const std::string &fallback) {
  const char *v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

httplib::Server *running_server = nullptr;

void stop_server(int) {
  if (running_server)
    running_server->stop();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Knot diagrams and the Knotty Jones game"};
  app.require_subcommand(1);
  std::string oracle_name = env_or("KJ_ORACLE", "state-sum");
  app.add_option("--oracle", oracle_name, "state-sum, contraction or remote:<url> (env KJ_ORACLE)");

  std::string pd_path, moves_path, format = "json";
  auto *jones_cmd = app.add_subcommand("jones", "Jones polynomial of a PD code (file or - for stdin)");
  jones_cmd->add_option("pd", pd_path, "PD file, text or JSON form")->required();
  jones_cmd->add_option("--oracle", oracle_name, "state-sum, contraction or remote:<url>");
  jones_cmd->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto *moves_cmd = app.add_subcommand("moves", "List applicable move sites");
  moves_cmd->add_option("pd", pd_path)->required();

  auto *apply_cmd = app.add_subcommand("apply", "Apply a move script and print the resulting PD JSON");
  apply_cmd->add_option("pd", pd_path)->required();
  apply_cmd->add_option("moves", moves_path, "move object or array of moves")->required();
  int cap = kDefaultCrossingCap;
  apply_cmd->add_option("--crossing-cap", cap);

  std::string config_arg, player_jp_arg, script_path;
  auto *generate_cmd = app.add_subcommand("generate", "Generate an opponent knot");
  generate_cmd->add_option("--config", config_arg, "generator config (file or inline JSON)");
  generate_cmd->add_option("--player-jp", player_jp_arg, "player JP (file or inline JSON); defaults to 1");

  bool debug = false;
  auto *play_cmd = app.add_subcommand("play", "Replay a scripted game and print the final snapshot");
  play_cmd->add_option("--config", config_arg, "game config (file or inline JSON)");
  play_cmd->add_option("--script", script_path, "array of turn submissions")->required();
  play_cmd->add_flag("--debug", debug, "include opponent provenance");

  int port = std::atoi(env_or("KJ_PORT", "8080").c_str());
  std::string data_dir = env_or("KJ_DATA_DIR", "kj-data");
  std::string host = "127.0.0.1";
  auto *serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--port", port, "listen port (env KJ_PORT)");
  serve_cmd->add_option("--data-dir", data_dir, "session directory (env KJ_DATA_DIR)");
  serve_cmd->add_option("--host", host);
  serve_cmd->add_flag("--debug", debug, "include opponent provenance in snapshots");

  BenchOptions bench_opt;
  auto *bench_cmd = app.add_subcommand("bench", "Crossings vs runtime of the state sum");
  bench_cmd->add_option("--max-crossings", bench_opt.max_crossings)->check(CLI::Range(1, 24));
  bench_cmd->add_option("--min-crossings", bench_opt.min_crossings)->check(CLI::Range(1, 24));
  bench_cmd->add_option("--samples", bench_opt.samples)->check(CLI::Range(1, 1000));
  bench_cmd->add_option("--seed", bench_opt.seed);
  bench_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    report("UsageError", e.what());
    return 64;
  }

  try {
    auto oracle = std::shared_ptr<const JonesOracle>(make_oracle(oracle_name));

    if (*jones_cmd) {
      const LaurentPoly jp = jones(build_diagram(pd_from_any(read_input(pd_path))), *oracle);
      if (format == "text")
        std::cout << jp.to_string() << '\n';
      else
        std::cout << poly_to_json(jp).dump() << '\n';
    } else if (*moves_cmd) {
      std::cout << site_list_to_json(enumerate_moves(build_diagram(pd_from_any(read_input(pd_path))))).dump()
                << '\n';
    } else if (*apply_cmd) {
      Diagram d = build_diagram(pd_from_any(read_input(pd_path)));
      const auto moves = moves_from_json(json_argument(moves_path, "move script"));
      for (std::size_t i = 0; i < moves.size(); ++i) {
        try {
          d = apply_move(d, moves[i], cap);
        } catch (const Error &e) {
          throw Error(e.kind(), "move " + std::to_string(i + 1) + ": " + e.what());
        }
      }
      std::cout << diagram_to_json(d).dump() << '\n';
    } else if (*generate_cmd) {
      const GeneratorConfig config =
          config_arg.empty() ? GeneratorConfig{} : generator_config_from_json(json_argument(config_arg, "config"));
      const LaurentPoly player =
          player_jp_arg.empty() ? LaurentPoly::one(Variable::T) : poly_from_json(json_argument(player_jp_arg, "player JP"));
      std::cout << opponent_to_json(generate_opponent(config, player, *oracle), true).dump() << '\n';
    } else if (*play_cmd) {
      const GameConfig config =
          config_arg.empty() ? GameConfig{} : game_config_from_json(json_argument(config_arg, "config"));
      const auto script = script_from_json(json_argument(script_path, "script"));
      const GameState final_state = replay_game(config, script, *oracle);
      std::cout << game_state_to_json(config, final_state, debug).dump() << '\n';
    } else if (*serve_cmd) {
      GameService service(data_dir, oracle, debug);
      const LoadReport loaded = service.load();
      httplib::Server server;
      install_routes(server, service);
      running_server = &server;
      std::signal(SIGINT, stop_server);
      std::signal(SIGTERM, stop_server);
      if (!server.bind_to_port(host, port))
        throw IoFailure("cannot listen on " + host + ":" + std::to_string(port));
      std::cerr << Json{{"listening", host + ":" + std::to_string(port)},
                        {"dataDir", data_dir},
                        {"oracle", oracle->descriptor()},
                        {"sessions", loaded.loaded},
                        {"quarantined", loaded.quarantined}}
                       .dump()
                << std::endl;
      server.listen_after_bind();
    } else if (*bench_cmd) {
      if (bench_opt.min_crossings > bench_opt.max_crossings)
        fail(ErrorKind::InvalidConfig, "--min-crossings exceeds --max-crossings");
      const auto rows = bench_state_sum(bench_opt);
      if (format == "text") {
        std::cout << "crossings  samples  median_ms     max_ms\n";
        for (const auto &r : rows)
          std::cout << std::setw(9) << r.crossings << std::setw(9) << r.samples << std::fixed << std::setprecision(3)
                    << std::setw(11) << r.median_ms << std::setw(11) << r.max_ms << '\n';
      } else {
        std::cout << bench_to_json(rows).dump() << '\n';
      }
    }
  } catch (const Error &e) {
    report(std::string(e.name()), e.what());
    return exit_code_for(e.kind());
  } catch (const IoFailure &e) {
    report("IoError", e.what());
    return 5;
  } catch (const std::exception &e) {
    report("InternalError", e.what());
    return 1;
  }
  return 0;
}
