#include "affect/perception/dialogue_act.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "affect/perception/tokenizer.hpp"
#include "affect/util/kv_config.hpp"
#include "affect/util/rng.hpp"
#include "affect/util/text.hpp"

namespace affect::perception {

namespace {

constexpr std::array<std::string_view, kDialogueActCount> kNames = {
    "Accept", "Bye",       "Clarify",  "Continuer", "Emotion",    "Emphasis",      "Greet", "NoAnswer",
    "Other",  "Reject",    "Statement", "WhQuestion", "YesAnswer", "YesNoQuestion", "Order"};

void shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.index(i)]);
}

}  // namespace

std::string_view to_string(DialogueAct act) { return kNames[static_cast<std::size_t>(act)]; }

std::optional<DialogueAct> parse_dialogue_act(std::string_view s) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == s) return static_cast<DialogueAct>(i);
  return std::nullopt;
}

const std::array<DialogueAct, kDialogueActCount>& all_dialogue_acts() {
  static const auto acts = [] {
    std::array<DialogueAct, kDialogueActCount> a{};
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<DialogueAct>(i);
    return a;
  }();
  return acts;
}

std::vector<LabeledUtterance> parse_da_corpus(std::string_view content) {
  std::vector<LabeledUtterance> out;
  std::size_t lineno = 0;
  for (auto line : text::split(content, '\n')) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw DaError(DaError::Kind::FormatError, "line " + std::to_string(lineno) + ": expected label<TAB>text");
    const auto label = std::string(text::trim(line.substr(0, tab)));
    auto act = parse_dialogue_act(label);
    if (!act)
      throw DaError(DaError::Kind::UnknownClass,
                    "line " + std::to_string(lineno) + ": unknown dialogue act '" + label + "'");
    out.push_back({std::string(text::trim(line.substr(tab + 1))), *act});
  }
  return out;
}

std::vector<LabeledUtterance> load_da_corpus(const std::string& path) {
  std::string content;
  try {
    content = text::read_file(path);
  } catch (const std::runtime_error& e) {
    throw DaError(DaError::Kind::FormatError, e.what());
  }
  return parse_da_corpus(content);
}

std::vector<std::string> da_features(std::string_view utterance) {
  const auto tokens = tokenize(utterance);
  std::vector<std::string> seq;
  seq.reserve(tokens.size() + 2);
  seq.emplace_back("<s>");
  for (const auto& t : tokens) seq.push_back(text::to_lower(t.surface));
  seq.emplace_back("</s>");

  std::vector<std::string> feats;
  for (std::size_t i = 1; i + 1 < seq.size(); ++i) feats.push_back("u:" + seq[i]);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) feats.push_back("b:" + seq[i] + " " + seq[i + 1]);
  std::sort(feats.begin(), feats.end());
  feats.erase(std::unique(feats.begin(), feats.end()), feats.end());
  return feats;
}

LinearDaModel LinearDaModel::train(const std::vector<LabeledUtterance>& corpus, const DaTrainOptions& options) {
  if (corpus.empty()) throw DaError(DaError::Kind::EmptyCorpus, "training corpus is empty");

  LinearDaModel model;
  std::vector<bool> present(kDialogueActCount, false);
  for (const auto& ex : corpus) present[static_cast<std::size_t>(ex.label)] = true;
  std::vector<int> class_slot(kDialogueActCount, -1);
  for (auto act : all_dialogue_acts())
    if (present[static_cast<std::size_t>(act)]) {
      class_slot[static_cast<std::size_t>(act)] = static_cast<int>(model.classes_.size());
      model.classes_.push_back(act);
    }
  const std::size_t k = model.classes_.size();

  std::map<std::string, std::size_t> vocab;
  std::vector<std::vector<std::size_t>> xs;
  std::vector<std::size_t> ys;
  for (const auto& ex : corpus) {
    std::vector<std::size_t> idx;
    for (auto& f : da_features(ex.text)) idx.push_back(vocab.emplace(std::move(f), vocab.size()).first->second);
    xs.push_back(std::move(idx));
    ys.push_back(static_cast<std::size_t>(class_slot[static_cast<std::size_t>(ex.label)]));
  }

  const std::size_t nf = vocab.size();
  std::vector<double> w(nf * k, 0.0), u(nf * k, 0.0), b(k, 0.0), ub(k, 0.0);
  double c = 1.0;
  Rng rng(options.seed);
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    shuffle(order, rng);
    for (auto i : order) {
      const auto& x = xs[i];
      for (std::size_t cls = 0; cls < k; ++cls) {
        const double y = ys[i] == cls ? 1.0 : -1.0;
        double s = b[cls];
        for (auto f : x) s += w[f * k + cls];
        if (y * s <= 0.0) {
          for (auto f : x) {
            w[f * k + cls] += y;
            u[f * k + cls] += c * y;
          }
          b[cls] += y;
          ub[cls] += c * y;
        }
      }
      c += 1.0;
    }
  }

  model.bias_.resize(k);
  for (std::size_t cls = 0; cls < k; ++cls) model.bias_[cls] = b[cls] - ub[cls] / c;
  for (const auto& [feat, f] : vocab) {
    std::vector<double> row(k);
    bool nonzero = false;
    for (std::size_t cls = 0; cls < k; ++cls) {
      row[cls] = w[f * k + cls] - u[f * k + cls] / c;
      nonzero = nonzero || row[cls] != 0.0;
    }
    if (nonzero) model.weights_.emplace(feat, std::move(row));
  }
  return model;
}

std::map<DialogueAct, double> LinearDaModel::scores(std::string_view utterance) const {
  if (!trained()) throw DaError(DaError::Kind::NotTrained, "dialogue-act model is not trained");
  std::vector<double> s = bias_;
  for (const auto& f : da_features(utterance)) {
    auto it = weights_.find(f);
    if (it == weights_.end()) continue;
    for (std::size_t cls = 0; cls < s.size(); ++cls) s[cls] += it->second[cls];
  }
  std::map<DialogueAct, double> out;
  for (std::size_t cls = 0; cls < classes_.size(); ++cls) out[classes_[cls]] = s[cls];
  return out;
}

DialogueActLabel LinearDaModel::classify(std::string_view utterance) const {
  if (!trained()) throw DaError(DaError::Kind::NotTrained, "dialogue-act model is not trained");
  if (tokenize(utterance).empty()) return {DialogueAct::Other, 0.0};
  const auto s = scores(utterance);
  auto best = s.begin();
  for (auto it = s.begin(); it != s.end(); ++it)
    if (it->second > best->second) best = it;
  double z = 0.0;
  for (const auto& [_, v] : s) z += std::exp(v - best->second);
  return {best->first, 1.0 / z};
}

void LinearDaModel::save(std::ostream& out) const {
  out << kMagic << "\n";
  out << "algorithm\tovr-averaged-perceptron\n";
  out << "classes";
  for (auto c : classes_) out << '\t' << to_string(c);
  out << "\n";
  out << std::setprecision(17);
  out << "bias";
  for (double v : bias_) out << '\t' << v;
  out << "\n";
  out << "features\t" << weights_.size() << "\n";
  for (const auto& [feat, row] : weights_) {
    out << feat;
    for (double v : row) out << '\t' << v;
    out << "\n";
  }
}

LinearDaModel LinearDaModel::load(std::istream& in) {
  const auto bad = [](const std::string& what) { return DaError(DaError::Kind::ModelFormat, what); };
  std::string line;
  if (!std::getline(in, line) || line != kMagic) throw bad("missing ALDA1 magic header");
  if (!std::getline(in, line) || line.rfind("algorithm\t", 0) != 0) throw bad("missing algorithm line");
  if (line != "algorithm\tovr-averaged-perceptron") throw bad("unsupported algorithm: " + line.substr(10));

  LinearDaModel m;
  if (!std::getline(in, line)) throw bad("missing classes line");
  auto fields = text::split(line, '\t');
  if (fields.empty() || fields[0] != "classes" || fields.size() < 2) throw bad("bad classes line");
  for (std::size_t i = 1; i < fields.size(); ++i) {
    auto act = parse_dialogue_act(fields[i]);
    if (!act) throw bad("unknown class " + fields[i]);
    m.classes_.push_back(*act);
  }
  const std::size_t k = m.classes_.size();
  const auto numbers = [&](const std::vector<std::string>& f, std::size_t from) {
    if (f.size() != from + k) throw bad("wrong number of weights");
    std::vector<double> v;
    for (std::size_t i = from; i < f.size(); ++i) {
      try {
        v.push_back(std::stod(f[i]));
      } catch (const std::exception&) {
        throw bad("bad number " + f[i]);
      }
    }
    return v;
  };
  if (!std::getline(in, line)) throw bad("missing bias line");
  fields = text::split(line, '\t');
  if (fields[0] != "bias") throw bad("bad bias line");
  m.bias_ = numbers(fields, 1);
  if (!std::getline(in, line)) throw bad("missing features line");
  fields = text::split(line, '\t');
  if (fields.size() != 2 || fields[0] != "features") throw bad("bad features line");
  const auto n = std::stoul(fields[1]);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw bad("truncated weights");
    fields = text::split(line, '\t');
    auto row = numbers(fields, 1);
    m.weights_.emplace(fields[0], std::move(row));
  }
  return m;
}

void LinearDaModel::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DaError(DaError::Kind::ModelFormat, "cannot write " + path);
  save(out);
}

LinearDaModel LinearDaModel::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DaError(DaError::Kind::ModelFormat, "cannot open " + path);
  return load(in);
}

LinearDaModel train_dialogue_act(const std::vector<LabeledUtterance>& corpus, const DaTrainOptions& options) {
  return LinearDaModel::train(corpus, options);
}

DialogueActLabel classify_dialogue_act(std::string_view utterance, const DialogueActClassifier& model) {
  return model.classify(utterance);
}

CrossValidation cross_validate(const std::vector<LabeledUtterance>& corpus, std::size_t folds,
                               const DaTrainOptions& options) {
  if (folds < 2) throw std::invalid_argument("cross validation needs at least 2 folds");
  std::map<DialogueAct, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < corpus.size(); ++i) by_class[corpus[i].label].push_back(i);

  Rng rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> fold_of(corpus.size());
  std::size_t next = 0;
  for (auto& [_, idx] : by_class) {
    shuffle(idx, rng);
    for (auto i : idx) fold_of[i] = next++ % folds;
  }

  CrossValidation cv;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<LabeledUtterance> train, test;
    for (std::size_t i = 0; i < corpus.size(); ++i) (fold_of[i] == f ? test : train).push_back(corpus[i]);
    if (test.empty()) continue;
    const auto model = LinearDaModel::train(train, options);
    for (const auto& ex : test) cv.correct += model.classify(ex.text).label == ex.label;
    cv.total += test.size();
  }
  cv.accuracy = cv.total ? static_cast<double>(cv.correct) / static_cast<double>(cv.total) : 0.0;
  return cv;
}

DaTrainOptions load_da_options(const std::string& conf_path) {
  DaTrainOptions o;
  if (!std::filesystem::exists(conf_path)) return o;
  const auto cfg = KvConfig::load(conf_path);
  const auto epochs = cfg.get_int_or("epochs", static_cast<std::int64_t>(o.epochs));
  if (epochs <= 0) throw ConfigError(conf_path, 0, "epochs must be positive");
  o.epochs = static_cast<std::size_t>(epochs);
  o.seed = static_cast<std::uint64_t>(cfg.get_int_or("seed", static_cast<std::int64_t>(o.seed)));
  return o;
}

}  // namespace affect::perception
