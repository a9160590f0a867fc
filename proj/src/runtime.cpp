#include "affect/runtime.hpp"

#include <cstdlib>
#include <filesystem>

namespace affect {

namespace fs = std::filesystem;

std::string default_data_dir() {
  if (const char* env = std::getenv("AFFECT_DATA_DIR"); env && *env) return env;
  return AFFECT_DEFAULT_DATA_DIR;
}

Runtime::Runtime(std::string data_dir, std::string lexicon_dir, lexicon::LexiconBundle bundle,
                 perception::LinearDaModel model, perception::SentimentSettings settings)
    : data_dir_(std::move(data_dir)),
      lexicon_dir_(std::move(lexicon_dir)),
      bundle_(std::move(bundle)),
      model_(std::move(model)),
      settings_(std::move(settings)),
      perceiver_(bundle_, model_, settings_) {}

std::unique_ptr<Runtime> Runtime::load(const RuntimeOptions& options) {
  const fs::path data = options.data_dir.empty() ? fs::path(default_data_dir()) : fs::path(options.data_dir);
  const auto lex_dir =
      lexicon::resolve_lexicon_dir(options.lexicon_dir ? *options.lexicon_dir : (data / "lexicons").string());
  auto bundle = lexicon::load_lexicons(lex_dir);

  perception::LinearDaModel model;
  if (options.model_path) {
    model = perception::LinearDaModel::load_file(*options.model_path);
  } else {
    const auto opts = perception::load_da_options((data / "da" / "classifier.conf").string());
    model = perception::train_dialogue_act(perception::load_da_corpus((data / "da" / "corpus.tsv").string()), opts);
  }

  // Presets travel with the lexicons; fall back to the bundled file.
  auto conf = fs::path(lex_dir) / "sentiment.conf";
  if (!fs::exists(conf)) conf = data / "lexicons" / "sentiment.conf";
  auto settings = perception::SentimentSettings::preset(options.classifier, conf.string());

  return std::unique_ptr<Runtime>(
      new Runtime(data.string(), lex_dir, std::move(bundle), std::move(model), std::move(settings)));
}

}  // namespace affect
