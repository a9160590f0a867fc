#pragma once

// Loads the shared, read-only resources every front end needs: lexicons,
// the dialogue-act model and the sentiment preset.

#include <memory>
#include <optional>
#include <string>

#include "affect/lexicon.hpp"
#include "affect/perception/classifiers.hpp"
#include "affect/perception/dialogue_act.hpp"
#include "affect/perception/perceive.hpp"

namespace affect {

struct RuntimeOptions {
  /// Directory holding lexicons/, da/, scenarios/, patterns/, ...
  std::string data_dir;
  /// Overrides data_dir/lexicons (AFFECT_LEXICON_DIR overrides both).
  std::optional<std::string> lexicon_dir;
  /// Trained model file; without one the bundled corpus is used to train.
  std::optional<std::string> model_path;
  /// Sentiment preset: "v3_1" or "lexicon".
  std::string classifier = "v3_1";
};

/// AFFECT_DATA_DIR if set, else the data directory of the source tree.
std::string default_data_dir();

class Runtime {
 public:
  static std::unique_ptr<Runtime> load(const RuntimeOptions& options);

  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  const lexicon::LexiconBundle& bundle() const { return bundle_; }
  const perception::LinearDaModel& model() const { return model_; }
  const perception::SentimentSettings& settings() const { return settings_; }
  const perception::Perceiver& perceiver() const { return perceiver_; }
  const std::string& data_dir() const { return data_dir_; }
  const std::string& lexicon_dir() const { return lexicon_dir_; }

 private:
  Runtime(std::string data_dir, std::string lexicon_dir, lexicon::LexiconBundle bundle,
          perception::LinearDaModel model, perception::SentimentSettings settings);

  std::string data_dir_;
  std::string lexicon_dir_;
  lexicon::LexiconBundle bundle_;
  perception::LinearDaModel model_;
  perception::SentimentSettings settings_;
  perception::Perceiver perceiver_;
};

}  // namespace affect
