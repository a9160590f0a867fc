#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "affect/analysis/analysis.hpp"

using namespace affect::analysis;
using affect::chat::SessionLog;
using affect::perception::SentimentClass;

namespace {

Analyzer analyzer() { return {&test::bundle(), test::runtime().settings(), &test::runtime().model()}; }

const GroupStats* find(const std::vector<GroupStats>& v, const std::string& group, const std::string& metric) {
  for (const auto& s : v)
    if (s.group == group && s.metric == metric) return &s;
  return nullptr;
}

UtteranceRecord rec(ParticipantClass k, std::size_t words, SentimentClass s) {
  UtteranceRecord r;
  r.klass = k;
  r.word_count = words;
  r.sentiment = s;
  return r;
}

// Splits one CSV line; fields here never contain quotes.
std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("participant classes come from metadata") {
    SessionLog log;
    log.config.scenario_kind = affect::control::ScenarioKind::StrangerChat;
    log.config.profile = affect::control::ProfileKind::Negative;
    CHECK(classify_participant(log, "bartender") == ParticipantClass::SystemNegative);
    CHECK(classify_participant(log, "Ana") == ParticipantClass::UserWithNegative);
    log.config.profile = affect::control::ProfileKind::Neutral;
    CHECK(classify_participant(log, "Ana") == ParticipantClass::UserWithNeutral);
    log.config.profile = affect::control::ProfileKind::Positive;
    CHECK_THROWS_AS(classify_participant(log, "Ana"), AnalysisError);

    log.config.scenario_kind = affect::control::ScenarioKind::BarTriadicExclusion;
    log.roles = {{"Maria", "included"}, {"Juliana", "excluded"}};
    CHECK(classify_participant(log, "bartender") == ParticipantClass::Bartender);
    CHECK(classify_participant(log, "Juliana") == ParticipantClass::Excluded);
    CHECK(classify_participant(log, "Maria") == ParticipantClass::Included);
    try {
      classify_participant(log, "Nobody");
      FAIL("expected MetadataMissing");
    } catch (const AnalysisError& e) {
      CHECK(e.kind() == AnalysisError::Kind::MetadataMissing);
    }
    for (int i = 0; i <= static_cast<int>(ParticipantClass::Excluded); ++i)
      CHECK(parse_participant_class(to_string(static_cast<ParticipantClass>(i))) == static_cast<ParticipantClass>(i));
  }

  TEST_CASE("triadic fixture maps senders via the roles sidecar") {
    const auto recs = parse_log(test::fixture("logs/triadic/room-1.tsv"), analyzer());
    CHECK(recs.size() == 33);
    for (const auto& r : recs) {
      if (r.sender == "bartender") CHECK(r.klass == ParticipantClass::Bartender);
      if (r.sender == "Maria") CHECK(r.klass == ParticipantClass::Included);
      if (r.sender == "Juliana") CHECK(r.klass == ParticipantClass::Excluded);
      CHECK(r.dialogue_act.has_value());
    }
    const auto per = word_count_stats(recs, Grouping::PerClass);
    REQUIRE(per.size() == 3);
    CHECK(per[0].group == "Bartender");
    CHECK(per[1].group == "Included");
    CHECK(per[2].group == "Excluded");
  }

  TEST_CASE("empty log and missing sidecar") {
    const auto dir = test::temp_dir("an");
    SessionLog log;
    log.room_id = "empty";
    log.config.scenario_kind = affect::control::ScenarioKind::BarDyadic;
    affect::chat::write_session_log(log, dir.string());
    CHECK(parse_log((dir / "empty.tsv").string(), analyzer()).empty());
    std::filesystem::remove(dir / "empty.json");
    try {
      parse_log((dir / "empty.tsv").string(), analyzer());
      FAIL("expected MetadataMissing");
    } catch (const AnalysisError& e) {
      CHECK(e.kind() == AnalysisError::Kind::MetadataMissing);
    }
    try {
      parse_logs((dir / "none").string(), analyzer());
      FAIL("expected IoError");
    } catch (const AnalysisError& e) {
      CHECK(e.kind() == AnalysisError::Kind::IoError);
    }
  }

  TEST_CASE("word count examples") {
    const auto one = word_count_stats({rec(ParticipantClass::Included, 7, SentimentClass::Neutral)}, Grouping::PerClass);
    REQUIRE(one.size() == 1);
    CHECK(one[0].mean == 7.0);
    CHECK_FALSE(one[0].sd);

    const auto ratio_recs = parse_logs(test::fixture("logs/ratio"), analyzer());
    const auto svh = word_count_stats(ratio_recs, Grouping::SystemVsHuman);
    CHECK(find(svh, "system", "word_count")->total == 220.0);
    CHECK(find(svh, "human", "word_count")->total == 100.0);
    const auto ratio = system_human_ratio(svh);
    REQUIRE(ratio);
    CHECK(*ratio->mean == doctest::Approx(2.2));
    CHECK(*ratio->mean > 2.0);
  }

  TEST_CASE("fifty-message fixture against brute-force recounts") {
    const auto log = affect::chat::read_session_log(test::fixture("logs/fifty/stranger-negative.tsv"));
    REQUIRE(log.messages.size() == 50);
    const auto recs = records_from_log(log, analyzer());

    std::map<std::string, std::vector<double>> wc;
    std::map<std::string, std::map<std::string, double>> hits;
    std::map<std::string, double> words;
    for (const auto& m : log.messages) {
      const std::string g = m.sender == "bartender" ? "SystemNegative" : "UserWithNegative";
      const auto w = oracle::words(m.text);
      wc[g].push_back(double(w.size()));
      words[g] += double(w.size());
      for (const auto& [c, k] : oracle::category_hits(m.text, test::bundle().categories)) hits[g][c] += double(k);
    }

    for (const auto& s : word_count_stats(recs, Grouping::PerClass)) {
      const auto& xs = wc.at(s.group);
      double sum = 0;
      for (double x : xs) sum += x;
      const double mean = sum / double(xs.size());
      double ss = 0;
      for (double x : xs) ss += (x - mean) * (x - mean);
      CHECK(s.n == xs.size());
      CHECK(*s.total == sum);
      CHECK(*s.mean == doctest::Approx(mean).epsilon(1e-12));
      CHECK(*s.sd == doctest::Approx(std::sqrt(ss / double(xs.size() - 1))).epsilon(1e-12));
    }

    const std::vector<std::string> cats{"posemo", "negemo", "social", "cogmech", "negate"};
    const auto rates = category_rates(recs, cats);
    CHECK(rates.size() == 2 * cats.size());
    for (const auto& s : rates) {
      const double h = hits[s.group].count(s.metric) ? hits[s.group][s.metric] : 0.0;
      CHECK_MESSAGE(*s.total == h, s.group << " " << s.metric);
      CHECK(*s.mean == doctest::Approx(100.0 * h / words.at(s.group)).epsilon(1e-12));
    }
  }

  TEST_CASE("category rate arithmetic") {
    affect::lexicon::CategoryLexicon lex(
        {{"happ", true, {"posemo"}}, {"sad", false, {"negemo"}}},
        {{"posemo", {"Positive emotion", affect::lexicon::CategoryGroup::Psychological}},
         {"negemo", {"Negative emotion", affect::lexicon::CategoryGroup::Psychological}}});
    auto bundle = test::bundle();
    bundle.categories = lex;
    const Analyzer a{&bundle, {}, nullptr};
    const auto r = a.analyze(ParticipantClass::Included, "x", "Maria", "happy happy sad");
    const auto rates = category_rates({r}, {"posemo", "negemo"});
    CHECK(*find(rates, "Included", "posemo")->mean == doctest::Approx(66.6666667));
    CHECK(*find(rates, "Included", "negemo")->mean == doctest::Approx(33.3333333));

    const auto empty = category_rates({rec(ParticipantClass::Excluded, 0, SentimentClass::Neutral)}, {"posemo"});
    REQUIRE(empty.size() == 1);
    CHECK_FALSE(empty[0].mean);
    CHECK(*empty[0].total == 0.0);
  }

  TEST_CASE("sentiment distribution examples") {
    const auto d = sentiment_distribution({rec(ParticipantClass::Included, 1, SentimentClass::Positive),
                                           rec(ParticipantClass::Included, 1, SentimentClass::Positive),
                                           rec(ParticipantClass::Included, 1, SentimentClass::Negative),
                                           rec(ParticipantClass::Included, 1, SentimentClass::Neutral),
                                           rec(ParticipantClass::Excluded, 1, SentimentClass::Neutral)});
    REQUIRE(d.size() == 2);
    CHECK(*d[0].proportions == std::array<double, 3>{0.25, 0.25, 0.5});
    CHECK(*d[1].proportions == std::array<double, 3>{0.0, 1.0, 0.0});
  }

  TEST_CASE("property: proportions sum to one and match a tally on the fixtures") {
    for (const char* dir : {"logs/triadic", "logs/fifty", "logs/ratio"}) {
      const auto recs = parse_logs(test::fixture(dir), analyzer());
      std::map<std::string, std::array<double, 3>> tally;
      std::map<std::string, double> n;
      for (const auto& r : recs) {
        const auto g = std::string(to_string(r.klass));
        tally[g][static_cast<std::size_t>(r.sentiment)] += 1;
        n[g] += 1;
      }
      for (const auto& s : sentiment_distribution(recs)) {
        const auto& p = *s.proportions;
        CHECK(std::abs(p[0] + p[1] + p[2] - 1.0) <= 1e-9);
        for (std::size_t i = 0; i < 3; ++i) {
          CHECK(p[i] >= 0.0);
          CHECK(p[i] == doctest::Approx(tally[s.group][i] / n[s.group]));
        }
      }
    }
  }

  TEST_CASE("accounting identity: group totals equal the sum of records") {
    const auto recs = parse_logs(test::fixture("logs/triadic"), analyzer());
    double all = 0;
    for (const auto& r : recs) all += double(r.word_count);
    for (auto g : {Grouping::PerClass, Grouping::SystemVsHuman}) {
      double sum = 0;
      for (const auto& s : word_count_stats(recs, g)) sum += *s.total;
      CHECK(sum == all);
    }
  }

  TEST_CASE("CSV: stable header, identical re-export, values survive a reread") {
    const auto recs = parse_logs(test::fixture("logs/fifty"), analyzer());
    auto stats = word_count_stats(recs, Grouping::PerClass);
    const auto more = sentiment_distribution(recs);
    stats.insert(stats.end(), more.begin(), more.end());
    const auto rates = category_rates(recs, {"posemo", "negemo"});
    stats.insert(stats.end(), rates.begin(), rates.end());

    const auto csv = format_csv(stats);
    CHECK(csv.substr(0, csv.find('\n')) == test::read_file(test::fixture("golden/csv_header.txt")).substr(0, csv.find('\n')));

    const auto dir = test::temp_dir("csv");
    export_csv(stats, (dir / "a.csv").string());
    export_csv(stats, (dir / "b.csv").string());
    CHECK(test::read_file(dir / "a.csv") == test::read_file(dir / "b.csv"));
    CHECK(test::read_file(dir / "a.csv") == csv);

    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    for (const auto& s : stats) {
      REQUIRE(std::getline(in, line));
      const auto c = cells(line);
      REQUIRE(c.size() == 9);
      CHECK(c[0] == s.group);
      CHECK(c[1] == s.metric);
      CHECK(std::stoul(c[2]) == s.n);
      auto same = [](const std::string& cell, const std::optional<double>& v) {
        if (!v) return cell.empty();
        return std::abs(std::stod(cell) - *v) < 1e-6;
      };
      CHECK(same(c[3], s.mean));
      CHECK(same(c[4], s.sd));
      CHECK(same(c[5], s.total));
      for (std::size_t i = 0; i < 3; ++i)
        CHECK(same(c[6 + i], s.proportions ? std::optional<double>((*s.proportions)[i]) : std::nullopt));
    }
    CHECK_THROWS_AS(export_csv(stats, "/nonexistent-dir/x.csv"), AnalysisError);
  }
}
