// affect: command-line front end.
//   serve       WebSocket + HTTP chat server
//   run-local   one session driven by JSON lines on stdin
//   export      fetch a closed room's log from a running server
//   analyze     text analyses over exported logs
//   train-da    train (and cross-validate) the dialogue-act model
//   perceive    print the perception report of one utterance

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "affect/analysis/analysis.hpp"
#include "affect/chat/local.hpp"
#include "affect/chat/server.hpp"
#include "affect/chat/service.hpp"
#include "affect/runtime.hpp"
#include "affect/util/kv_config.hpp"
#include "httplib.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

affect::chat::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const std::string& config_path, const std::string& listen, std::string data_dir) {
  affect::RuntimeOptions ro;
  affect::chat::ServerOptions so;
  if (!config_path.empty()) {
    const auto cfg = affect::KvConfig::load(config_path);
    data_dir = cfg.get_or("data_dir", data_dir);
    if (cfg.has("lexicons")) ro.lexicon_dir = cfg.get("lexicons");
    if (cfg.has("model")) ro.model_path = cfg.get("model");
    ro.classifier = cfg.get_or("classifier", ro.classifier);
    so.tick_ms = cfg.get_int_or("tick_ms", so.tick_ms);
    if (cfg.has("log_dir")) so.log_dir = cfg.get("log_dir");
  }
  ro.data_dir = data_dir;
  std::tie(so.address, so.port) = affect::chat::parse_listen_address(listen);
  const auto rt = affect::Runtime::load(ro);
  affect::chat::SystemClock clock;
  affect::chat::ChatService service(rt->perceiver(), rt->data_dir(), clock);
  affect::chat::Server server(service, so);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "listening on " << so.address << ":" << so.port << "\n";
  server.run();
  g_server = nullptr;
  return 0;
}

int cmd_export(const std::string& server, const std::string& room, const std::string& out_dir) {
  httplib::Client cli(server);
  cli.set_connection_timeout(5);
  auto res = cli.Get("/sessions/" + room + "/export");
  if (!res) {
    std::cerr << "cannot reach " << server << "\n";
    return 2;
  }
  const auto body = json::parse(res->body, nullptr, false);
  if (res->status != 200 || body.is_discarded() || !body.contains("tsv")) {
    std::cerr << "export failed (" << res->status << "): " << res->body << "\n";
    return 1;
  }
  fs::create_directories(out_dir);
  std::ofstream(fs::path(out_dir) / (room + ".tsv"), std::ios::binary) << body["tsv"].get<std::string>();
  std::ofstream(fs::path(out_dir) / (room + ".json"), std::ios::binary) << body["json"].get<std::string>();
  std::cout << (fs::path(out_dir) / (room + ".tsv")).string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affective dialogue system: chat server, session runner and log analysis"};
  app.require_subcommand(1);
  std::string data_dir = affect::default_data_dir();
  app.add_option("--data", data_dir, "Data directory (scripts, profiles, lexicons, corpus)");

  auto* serve = app.add_subcommand("serve", "Run the WebSocket/HTTP chat server");
  std::string serve_config, listen = "127.0.0.1:8080";
  serve->add_option("--config", serve_config, "Server config (data_dir, lexicons, model, classifier, tick_ms, log_dir)");
  serve->add_option("--listen", listen, "host:port");

  auto* local = app.add_subcommand("run-local", "Run one session over stdin/stdout");
  std::string scenario, profile = "neutral", input, export_dir, bot_name = "bartender";
  std::uint64_t seed = 0;
  std::int64_t duration = 0, start = 1735689600;
  bool no_close = false, typing = false;
  local->add_option("--scenario", scenario, "stranger-chat | bar-dyadic | bar-triadic-exclusion")->required();
  local->add_option("--seed", seed, "Session seed")->required();
  local->add_option("--profile", profile, "neutral | negative | positive");
  local->add_option("--duration", duration, "Seconds (default: scenario default)");
  local->add_option("--bot-name", bot_name, "Addressing keyword / bot display name");
  local->add_option("--start", start, "Clock start, seconds since epoch");
  local->add_option("--input", input, "Read frames from this file instead of stdin");
  local->add_option("--export-dir", export_dir, "Write the closed room's log here");
  local->add_flag("--no-close", no_close, "Do not run the clock to the end at end of input");
  local->add_flag("--typing-delay", typing, "Delay bot replies in proportion to their length");

  auto* exp = app.add_subcommand("export", "Download a closed room's log from a server");
  std::string room, out_dir, server_url = "http://127.0.0.1:8080";
  exp->add_option("--room", room, "Room id")->required();
  exp->add_option("--out", out_dir, "Output directory")->required();
  exp->add_option("--server", server_url, "Server base URL");

  auto* analyze = app.add_subcommand("analyze", "Text analyses over exported logs");
  std::string logs, lexicons, model_path, report, classifier = "v3_1", csv_out, grouping = "per-class";
  std::vector<std::string> categories{"posemo", "negemo"};
  analyze->add_option("--logs", logs, "Directory of .tsv/.json logs")->required();
  analyze->add_option("--lexicons", lexicons, "Lexicon directory");
  analyze->add_option("--model", model_path, "Dialogue-act model file");
  analyze->add_option("--report", report, "word-count | categories | sentiment")
      ->required()
      ->check(CLI::IsMember({"word-count", "categories", "sentiment"}));
  analyze->add_option("--classifier", classifier, "lexicon | v3_1")->check(CLI::IsMember({"lexicon", "v3_1"}));
  analyze->add_option("--grouping", grouping, "system-vs-human | per-class")
      ->check(CLI::IsMember({"system-vs-human", "per-class"}));
  analyze->add_option("--categories", categories, "Category ids for the categories report");
  analyze->add_option("--out", csv_out, "CSV output path")->required();

  auto* train = app.add_subcommand("train-da", "Train the dialogue-act model");
  std::string corpus, model_out;
  std::size_t folds = 10;
  train->add_option("--corpus", corpus, "label<TAB>text corpus (default: bundled)");
  train->add_option("--out", model_out, "Write the trained model here");
  train->add_option("--folds", folds, "Cross-validation folds (0 = skip)");

  auto* perceive = app.add_subcommand("perceive", "Print the perception report of an utterance");
  std::string utterance;
  perceive->add_option("text", utterance, "Utterance")->required();
  perceive->add_option("--classifier", classifier, "lexicon | v3_1")->check(CLI::IsMember({"lexicon", "v3_1"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) return cmd_serve(serve_config, listen, data_dir);

    if (*exp) return cmd_export(server_url, room, out_dir);

    if (*local) {
      const auto rt = affect::Runtime::load({data_dir, std::nullopt, std::nullopt, "v3_1"});
      affect::chat::LocalRunOptions opts;
      json cfg{{"scenario", scenario}, {"seed", seed}, {"profile", profile}, {"bot_name", bot_name},
               {"typing_delay", typing}};
      if (duration != 0) cfg["duration_s"] = duration;
      opts.config = affect::chat::SessionConfig::from_json(cfg);
      opts.start_epoch_s = start;
      opts.close_at_eof = !no_close;
      if (!export_dir.empty()) opts.export_dir = export_dir;
      std::ifstream file;
      if (!input.empty()) {
        file.open(input);
        if (!file) throw std::runtime_error("cannot open " + input);
      }
      std::istream& in = input.empty() ? std::cin : file;
      affect::chat::run_local(rt->perceiver(), rt->data_dir(), opts, in, std::cout);
      return 0;
    }

    if (*analyze) {
      affect::RuntimeOptions ro{data_dir, std::nullopt, std::nullopt, classifier};
      if (!lexicons.empty()) ro.lexicon_dir = lexicons;
      if (!model_path.empty()) ro.model_path = model_path;
      const auto rt = affect::Runtime::load(ro);
      affect::analysis::Analyzer an{&rt->bundle(), rt->settings(), &rt->model()};
      const auto records = affect::analysis::parse_logs(logs, an);
      const auto g = grouping == "system-vs-human" ? affect::analysis::Grouping::SystemVsHuman
                                                   : affect::analysis::Grouping::PerClass;
      std::vector<affect::analysis::GroupStats> stats;
      if (report == "word-count") {
        stats = affect::analysis::word_count_stats(records, g);
        if (g == affect::analysis::Grouping::SystemVsHuman)
          if (auto r = affect::analysis::system_human_ratio(stats)) stats.push_back(*r);
      } else if (report == "categories") {
        stats = affect::analysis::category_rates(records, categories, g);
      } else {
        stats = affect::analysis::sentiment_distribution(records);
      }
      affect::analysis::export_csv(stats, csv_out);
      std::cout << affect::analysis::format_csv(stats);
      return 0;
    }

    if (*train) {
      const auto corpus_path = corpus.empty() ? (fs::path(data_dir) / "da" / "corpus.tsv").string() : corpus;
      const auto data = affect::perception::load_da_corpus(corpus_path);
      const auto opts = affect::perception::load_da_options((fs::path(data_dir) / "da" / "classifier.conf").string());
      if (folds > 1) {
        const auto cv = affect::perception::cross_validate(data, folds, opts);
        std::cout << folds << "-fold accuracy " << cv.accuracy << " (" << cv.correct << "/" << cv.total << ")\n";
      }
      const auto model = affect::perception::train_dialogue_act(data, opts);
      if (!model_out.empty()) {
        model.save_file(model_out);
        std::cout << "model written to " << model_out << "\n";
      }
      return 0;
    }

    if (*perceive) {
      const auto rt = affect::Runtime::load({data_dir, std::nullopt, std::nullopt, classifier});
      const auto r = rt->perceiver().perceive({utterance, "user", 0, std::nullopt});
      json j;
      j["dialogue_act"] = {{"label", affect::perception::to_string(r.dialogue_act.label)},
                           {"confidence", r.dialogue_act.confidence}};
      j["sentiment"] = {{"class", affect::perception::to_string(r.sentiment.klass)},
                        {"pos", r.sentiment.pos_score},
                        {"neg", r.sentiment.neg_score}};
      if (r.vad.matched_count > 0)
        j["vad"] = {{"valence", *r.vad.valence}, {"arousal", *r.vad.arousal}, {"dominance", *r.vad.dominance},
                    {"matched", r.vad.matched_count}};
      j["categories"] = r.categories.counts;
      j["words"] = r.categories.word_total;
      json ents = json::array();
      for (const auto& e : r.entities) ents.push_back({{"gazetteer", e.gazetteer}, {"phrase", e.phrase}});
      j["entities"] = ents;
      j["focus"] = r.focus.focus_terms;
      j["surface"] = {{"exclamations", r.surface.exclamation_count},
                      {"questions", r.surface.question_mark_count},
                      {"all_caps", r.surface.all_caps_token_count}};
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
