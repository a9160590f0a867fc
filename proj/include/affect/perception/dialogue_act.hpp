#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace affect::perception {

/// The 14 NPS chat dialogue acts plus Order (food or drink requests).
enum class DialogueAct {
  Accept,
  Bye,
  Clarify,
  Continuer,
  Emotion,
  Emphasis,
  Greet,
  NoAnswer,
  Other,
  Reject,
  Statement,
  WhQuestion,
  YesAnswer,
  YesNoQuestion,
  Order,
};

inline constexpr std::size_t kDialogueActCount = 15;

std::string_view to_string(DialogueAct act);
std::optional<DialogueAct> parse_dialogue_act(std::string_view s);
const std::array<DialogueAct, kDialogueActCount>& all_dialogue_acts();

struct DialogueActLabel {
  DialogueAct label = DialogueAct::Other;
  /// Softmax probability of the winning class; 0 for empty input.
  double confidence = 0.0;

  bool operator==(const DialogueActLabel&) const = default;
};

struct LabeledUtterance {
  std::string text;
  DialogueAct label = DialogueAct::Other;
};

class DaError : public std::runtime_error {
 public:
  enum class Kind { UnknownClass, FormatError, EmptyCorpus, ModelFormat, NotTrained };
  DaError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// `label<TAB>text` rows; '#' comment lines and blank lines are skipped.
std::vector<LabeledUtterance> load_da_corpus(const std::string& path);
std::vector<LabeledUtterance> parse_da_corpus(std::string_view content);

/// Lowercase unigram and bigram presence features (with sentence
/// boundary markers), deduplicated and sorted.
std::vector<std::string> da_features(std::string_view text);

/// Interface every dialogue-act classifier implements.
class DialogueActClassifier {
 public:
  virtual ~DialogueActClassifier() = default;
  virtual DialogueActLabel classify(std::string_view utterance) const = 0;
};

struct DaTrainOptions {
  std::size_t epochs = 10;
  std::uint64_t seed = 1;
};

/// One-vs-rest averaged perceptron over da_features().
class LinearDaModel final : public DialogueActClassifier {
 public:
  static constexpr std::string_view kMagic = "ALDA1";

  LinearDaModel() = default;

  static LinearDaModel train(const std::vector<LabeledUtterance>& corpus, const DaTrainOptions& options = {});

  DialogueActLabel classify(std::string_view utterance) const override;
  /// Raw per-class scores (only for trained classes).
  std::map<DialogueAct, double> scores(std::string_view utterance) const;

  bool trained() const { return !classes_.empty(); }
  const std::vector<DialogueAct>& classes() const { return classes_; }

  void save(std::ostream& out) const;
  static LinearDaModel load(std::istream& in);
  void save_file(const std::string& path) const;
  static LinearDaModel load_file(const std::string& path);

  bool operator==(const LinearDaModel& o) const {
    return classes_ == o.classes_ && bias_ == o.bias_ && weights_ == o.weights_;
  }

 private:
  std::vector<DialogueAct> classes_;
  std::vector<double> bias_;
  /// feature -> weight per class (parallel to classes_).
  std::map<std::string, std::vector<double>> weights_;
};

LinearDaModel train_dialogue_act(const std::vector<LabeledUtterance>& corpus, const DaTrainOptions& options = {});
DialogueActLabel classify_dialogue_act(std::string_view utterance, const DialogueActClassifier& model);

struct CrossValidation {
  double accuracy = 0.0;
  std::size_t correct = 0;
  std::size_t total = 0;
};

/// Stratified k-fold cross validation with a seeded fold assignment.
CrossValidation cross_validate(const std::vector<LabeledUtterance>& corpus, std::size_t folds,
                               const DaTrainOptions& options = {});

/// Reads training options from classifier.conf (`epochs`, `seed`); the
/// `reference.*` keys describe the kernel-machine reference setup and are
/// kept for documentation only.
DaTrainOptions load_da_options(const std::string& conf_path);

}  // namespace affect::perception
