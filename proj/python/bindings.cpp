// pybind11 bindings: perception, scripted sessions and log analysis.

#include <memory>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "affect/analysis/analysis.hpp"
#include "affect/chat/local.hpp"
#include "affect/runtime.hpp"

namespace py = pybind11;
using namespace affect;

namespace {

class PyRuntime {
 public:
  PyRuntime(const std::string& data_dir, const std::string& classifier)
      : rt_(Runtime::load({data_dir, std::nullopt, std::nullopt, classifier})) {}

  py::dict perceive(const std::string& text) const {
    const auto r = rt_->perceiver().perceive({text, "user", 0, std::nullopt});
    py::dict d;
    d["dialogue_act"] = std::string(perception::to_string(r.dialogue_act.label));
    d["dialogue_act_confidence"] = r.dialogue_act.confidence;
    d["sentiment"] = std::string(perception::to_string(r.sentiment.klass));
    d["pos_score"] = r.sentiment.pos_score;
    d["neg_score"] = r.sentiment.neg_score;
    d["valence"] = r.vad.valence;
    d["arousal"] = r.vad.arousal;
    d["dominance"] = r.vad.dominance;
    d["categories"] = r.categories.counts;
    d["words"] = r.categories.word_total;
    std::vector<std::pair<std::string, std::string>> ents;
    for (const auto& e : r.entities) ents.emplace_back(e.gazetteer, e.phrase);
    d["entities"] = ents;
    d["focus"] = r.focus.focus_terms;
    return d;
  }

  std::pair<std::string, double> dialogue_act(const std::string& text) const {
    const auto l = rt_->model().classify(text);
    return {std::string(perception::to_string(l.label)), l.confidence};
  }

  /// JSON-lines script in, JSON-lines frames out.
  std::string run_local(const std::string& script, const std::string& scenario, std::uint64_t seed,
                        const std::string& profile) const {
    chat::LocalRunOptions opts;
    opts.config = chat::SessionConfig::from_json({{"scenario", scenario}, {"seed", seed}, {"profile", profile}});
    std::istringstream in(script);
    std::ostringstream out;
    py::gil_scoped_release release;
    chat::run_local(rt_->perceiver(), rt_->data_dir(), opts, in, out);
    return out.str();
  }

  /// CSV text of one report over a directory of exported logs.
  std::string analyze(const std::string& logs, const std::string& report, const std::string& grouping,
                      const std::vector<std::string>& categories) const {
    const analysis::Analyzer an{&rt_->bundle(), rt_->settings(), &rt_->model()};
    const auto records = analysis::parse_logs(logs, an);
    const auto g = grouping == "system-vs-human" ? analysis::Grouping::SystemVsHuman : analysis::Grouping::PerClass;
    std::vector<analysis::GroupStats> stats;
    if (report == "word-count") {
      stats = analysis::word_count_stats(records, g);
      if (g == analysis::Grouping::SystemVsHuman)
        if (auto r = analysis::system_human_ratio(stats)) stats.push_back(*r);
    } else if (report == "categories") {
      stats = analysis::category_rates(records, categories, g);
    } else if (report == "sentiment") {
      stats = analysis::sentiment_distribution(records);
    } else {
      throw py::value_error("report must be word-count, categories or sentiment");
    }
    return analysis::format_csv(stats);
  }

  const std::string& data_dir() const { return rt_->data_dir(); }

 private:
  std::unique_ptr<Runtime> rt_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.def("default_data_dir", &default_data_dir);

  py::class_<PyRuntime>(m, "Runtime")
      .def(py::init<const std::string&, const std::string&>(), py::arg("data_dir"), py::arg("classifier") = "v3_1")
      .def("perceive", &PyRuntime::perceive, py::arg("text"))
      .def("dialogue_act", &PyRuntime::dialogue_act, py::arg("text"))
      .def("run_local", &PyRuntime::run_local, py::arg("script"), py::arg("scenario") = "bar-triadic-exclusion",
           py::arg("seed") = 0, py::arg("profile") = "neutral")
      .def("analyze", &PyRuntime::analyze, py::arg("logs"), py::arg("report") = "word-count",
           py::arg("grouping") = "per-class", py::arg("categories") = std::vector<std::string>{"posemo", "negemo"})
      .def_property_readonly("data_dir", &PyRuntime::data_dir);
}
