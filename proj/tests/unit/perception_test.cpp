#include <algorithm>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

#include "affect/perception/perceive.hpp"
#include "affect/util/kv_config.hpp"
#include "affect/util/rng.hpp"
#include "affect/util/text.hpp"

using namespace affect::perception;
using affect::lexicon::Polarity;

namespace {

const auto& mods() { return test::bundle().modifiers; }

std::vector<Token> tok(std::string_view s) { return tokenize(s, mods()); }

SentimentResult senti(std::string_view s, const SentimentSettings& settings = {}) {
  auto t = tok(s);
  return classify_sentiment(t, test::bundle(), settings);
}

std::vector<std::string> surfaces(const std::vector<Token>& ts, TokenKind kind) {
  std::vector<std::string> out;
  for (const auto& t : ts)
    if (t.kind == kind) out.push_back(t.surface);
  return out;
}

// Parses vad.tsv on its own instead of going through the loader.
std::map<std::string, std::array<double, 3>> raw_vad() {
  std::map<std::string, std::array<double, 3>> out;
  std::ifstream in(test::data_dir() + "/lexicons/vad.tsv");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string w;
    std::array<double, 3> v{};
    row >> w >> v[0] >> v[1] >> v[2];
    out[w] = v;
  }
  return out;
}

// Per-token scan over every pattern, no index.
std::map<std::string, std::size_t> naive_categories(const std::vector<Token>& tokens) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : tokens) {
    if (!t.is_word()) continue;
    std::set<std::string> hit;
    for (const auto& p : test::bundle().categories.entries()) {
      const bool match = p.is_stem ? t.lower.compare(0, p.stem.size(), p.stem) == 0 : t.lower == p.stem;
      if (match) hit.insert(p.categories.begin(), p.categories.end());
    }
    for (const auto& c : hit) ++counts[c];
  }
  return counts;
}

}  // namespace

TEST_SUITE("perception") {
  TEST_CASE("tokenizer") {
    CHECK(tok("").empty());

    auto t = tok("not happy!");
    CHECK(surfaces(t, TokenKind::Word) == std::vector<std::string>{"not", "happy"});
    CHECK(surfaces(t, TokenKind::Punct) == std::vector<std::string>{"!"});

    t = tok("here you are! :D");
    CHECK(surfaces(t, TokenKind::Word) == std::vector<std::string>{"here", "you", "are"});
    CHECK(surfaces(t, TokenKind::Punct) == std::vector<std::string>{"!"});
    CHECK(surfaces(t, TokenKind::Emoticon) == std::vector<std::string>{":D"});

    t = tok("great!:)");
    CHECK(surfaces(t, TokenKind::Emoticon) == std::vector<std::string>{":)"});
    CHECK(surfaces(t, TokenKind::Word) == std::vector<std::string>{"great"});

    t = tok("Hello BAR");
    REQUIRE(t.size() == 2);
    CHECK(t[0].surface == "Hello");
    CHECK(t[0].lower == "hello");
    CHECK_FALSE(t[0].is_all_caps);
    CHECK(t[1].is_all_caps);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(t[i].position == i);
  }

  TEST_CASE("tokens point back into the source text") {
    const std::string s = "  well... I'm (really) GLAD :) ok?";
    for (const auto& t : tok(s)) CHECK(s.substr(t.begin, t.surface.size()) == t.surface);
  }

  TEST_CASE("all_caps needs two letters") {
    CHECK(all_caps("BAD"));
    CHECK(all_caps("GR8"));
    CHECK_FALSE(all_caps("I"));
    CHECK_FALSE(all_caps("Bad"));
    CHECK_FALSE(all_caps("123"));
  }

  TEST_CASE("sentiment examples") {
    auto r = senti("happy");
    CHECK(r.pos_score > 0);
    CHECK(r.klass == SentimentClass::Positive);
    CHECK(senti("not happy").klass == SentimentClass::Negative);
    CHECK(senti("BAD").neg_score > senti("bad").neg_score);
    CHECK(senti("table") == SentimentResult{0, 0, SentimentClass::Neutral});
  }

  TEST_CASE("pipeline constants on hand-worked inputs") {
    // very(1.5) * happy, negated.
    auto r = senti("not very happy");
    CHECK(r.pos_score == 0.0);
    CHECK(r.neg_score == doctest::Approx(1.5));

    // caps 1.5 * very 1.5, negated, one exclamation boost 1.5.
    r = senti("I am NOT very HAPPY!!");
    CHECK(r.neg_score == doctest::Approx(3.375));
    CHECK(r.klass == SentimentClass::Negative);

    r = senti("GR8");
    CHECK(r.pos_score == doctest::Approx(1.5));

    // Two emoticons only.
    r = senti("ok :) :)");
    CHECK(r.pos_score == doctest::Approx(2.0));
  }

  TEST_CASE("negation scope is two words and stops at punctuation") {
    CHECK(senti("not a happy").klass == SentimentClass::Negative);
    CHECK(senti("not at all happy").klass == SentimentClass::Positive);
    CHECK(senti("not, happy").klass == SentimentClass::Positive);
    SentimentSettings off;
    off.negation_scope = 0;
    CHECK(senti("not happy", off).klass == SentimentClass::Positive);
  }

  TEST_CASE("exclamation boost applies once to the dominant side") {
    const auto one = senti("happy!");
    const auto three = senti("happy!!!");
    CHECK(one.pos_score == doctest::Approx(1.5));
    CHECK(three == one);
    // Tied scores get no boost.
    const auto tie = senti("happy sad!");
    CHECK(tie.pos_score == tie.neg_score);
    CHECK(tie.klass == SentimentClass::Neutral);
  }

  TEST_CASE("dual polarity words stay neutral under negation") {
    CHECK(test::bundle().is_positive("sick"));
    CHECK(test::bundle().is_negative("sick"));
    CHECK(senti("not sick").klass == SentimentClass::Neutral);
  }

  TEST_CASE("property: capitalization monotonicity over every matched word") {
    const auto& b = test::bundle();
    std::set<std::string> words = b.positive_union();
    words.insert(b.negative_union().begin(), b.negative_union().end());
    std::size_t checked = 0;
    for (const auto& w : words) {
      std::string caps = w;
      std::transform(caps.begin(), caps.end(), caps.begin(), [](unsigned char c) { return std::toupper(c); });
      if (!all_caps(caps)) continue;
      const auto lo = senti(w), up = senti(caps);
      CHECK_MESSAGE(up.pos_score > lo.pos_score - 1e-12, w);
      CHECK_MESSAGE(up.neg_score > lo.neg_score - 1e-12, w);
      CHECK_MESSAGE(up.pos_score + up.neg_score > lo.pos_score + lo.neg_score, w);
      ++checked;
    }
    CHECK(checked > 100);

    SentimentSettings flat;
    flat.caps_multiplier = 1.0;
    CHECK(senti("BAD", flat) == senti("bad", flat));
  }

  TEST_CASE("property: intensifier > bare > diminisher") {
    const auto& m = mods();
    for (const auto& [i, _] : m.intensifiers) {
      for (const auto& [d, __] : m.diminishers) {
        for (const char* w : {"happy", "awful"}) {
          const bool positive = test::bundle().is_positive(w);
          auto score = [&](const std::string& s) {
            auto r = senti(s);
            return positive ? r.pos_score : r.neg_score;
          };
          // Modifiers that are themselves polar add their own weight; skip them.
          if (test::bundle().is_positive(i) || test::bundle().is_negative(i)) continue;
          if (test::bundle().is_positive(d) || test::bundle().is_negative(d)) continue;
          CHECK_MESSAGE(score(i + " " + w) > score(w), i << " " << w);
          CHECK_MESSAGE(score(w) > score(d + " " + w), d << " " << w);
        }
      }
    }
  }

  TEST_CASE("intensifiers that are also polar words still flip under negation") {
    CHECK(senti("not super").klass == SentimentClass::Negative);
  }

  TEST_CASE("lexicon preset turns off modifiers") {
    const auto lex = SentimentSettings::preset("lexicon", test::data_dir() + "/lexicons/sentiment.conf");
    CHECK(lex.caps_multiplier == 1.0);
    CHECK_FALSE(lex.use_intensifiers);
    CHECK(senti("very HAPPY!", lex).pos_score == doctest::Approx(1.0));
    CHECK_THROWS_AS(SentimentSettings::preset("nope", test::data_dir() + "/lexicons/sentiment.conf"),
                    affect::ConfigError);
  }

  TEST_CASE("vad against an independent parse of the bundled norms") {
    const auto raw = raw_vad();
    const auto& vad = test::bundle().vad;

    CHECK(classify_vad(tok("zzzz qqqq"), vad) == VadResult{});

    const auto one = classify_vad(tok("happy"), vad);
    CHECK(one.matched_count == 1);
    CHECK(*one.valence == raw.at("happy")[0]);
    CHECK(*one.arousal == raw.at("happy")[1]);
    CHECK(*one.dominance == raw.at("happy")[2]);

    REQUIRE(raw.count("sad") == 1);
    const auto two = classify_vad(tok("happy, sad."), vad);
    CHECK(two.matched_count == 2);
    CHECK(*two.valence == doctest::Approx((raw.at("happy")[0] + raw.at("sad")[0]) / 2));
    CHECK(*two.arousal == doctest::Approx((raw.at("happy")[1] + raw.at("sad")[1]) / 2));
    CHECK(*two.dominance == doctest::Approx((raw.at("happy")[2] + raw.at("sad")[2]) / 2));
  }

  TEST_CASE("property: vad mean lies within the matched entries") {
    const auto raw = raw_vad();
    std::vector<std::string> words;
    for (const auto& [w, _] : raw) words.push_back(w);
    affect::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      std::string s;
      std::array<double, 3> lo{9, 9, 9}, hi{1, 1, 1};
      const auto n = 1 + rng.index(6);
      for (std::size_t k = 0; k < n; ++k) {
        const auto& w = words[rng.index(words.size())];
        s += w + " filler ";
        for (int d = 0; d < 3; ++d) {
          lo[d] = std::min(lo[d], raw.at(w)[d]);
          hi[d] = std::max(hi[d], raw.at(w)[d]);
        }
      }
      const auto r = classify_vad(tok(s), test::bundle().vad);
      REQUIRE(r.valence);
      const std::array<double, 3> got{*r.valence, *r.arousal, *r.dominance};
      for (int d = 0; d < 3; ++d) {
        CHECK(got[d] >= lo[d]);
        CHECK(got[d] <= hi[d]);
      }
    }
  }

  TEST_CASE("categorize") {
    const auto& cats = test::bundle().categories;
    const auto empty = categorize({}, cats);
    CHECK(empty.counts.empty());
    CHECK(empty.word_total == 0);

    affect::lexicon::CategoryLexicon happ({{"happ", true, {"posemo"}}},
                                          {{"posemo", {"Positive emotion", affect::lexicon::CategoryGroup::Psychological}}});
    const auto hh = categorize(tok("happy happy"), happ);
    CHECK(hh.counts.at("posemo") == 2);
    CHECK(hh.word_total == 2);

    const std::string sample =
        "I really don't think my family would like this, but honestly we had a wonderful time at the "
        "football match and I felt so happy! Yes, um, well... maybe my friends were a bit annoyed :(";
    const auto toks = tok(sample);
    const auto got = categorize(toks, cats);
    CHECK(got.counts == naive_categories(toks));
    CHECK(got.word_total == word_count(toks));
    CHECK(got.counts.count("posemo") == 1);
    CHECK(got.counts.count("family") == 1);
  }

  TEST_CASE("property: category counts bounded by word total times max categories") {
    std::vector<std::string> words;
    for (const auto& p : test::bundle().categories.entries()) words.push_back(p.stem + (p.is_stem ? "s" : ""));
    affect::Rng rng(5);
    const auto cap = test::bundle().categories.max_categories_per_pattern();
    for (int trial = 0; trial < 200; ++trial) {
      std::string s;
      for (std::size_t k = 0, n = rng.index(12); k < n; ++k) s += words[rng.index(words.size())] + " ";
      const auto toks = tok(s);
      const auto p = categorize(toks, test::bundle().categories);
      std::size_t sum = 0;
      for (const auto& [_, c] : p.counts) sum += c;
      CHECK(sum <= p.word_total * cap);
      CHECK(p.counts == naive_categories(toks));
    }
  }

  TEST_CASE("surface features") {
    const auto& m = mods();
    CHECK(detect_surface("here you are! enjoy!", m).exclamation_count == 2);
    CHECK(detect_surface("", m) == SurfaceFeatures{});
    const auto s = detect_surface("WHAT?? really :) :(", m);
    CHECK(s.question_mark_count == 2);
    CHECK(s.all_caps_token_count == 1);
    REQUIRE(s.emoticons.size() == 2);
    CHECK(s.emoticons[0] == std::pair<std::string, Polarity>{":)", Polarity::Positive});
    CHECK(s.emoticons[1].second == Polarity::Negative);
  }

  TEST_CASE("entities") {
    const auto& g = test::bundle().gazetteers;
    std::string s = "I would like one beer";
    auto e = detect_entities(s, tok(s), g);
    REQUIRE(e.size() == 1);
    CHECK(e[0].gazetteer == "drinks");
    CHECK(e[0].phrase == "beer");
    CHECK(s.substr(e[0].begin, e[0].end - e[0].begin) == "beer");

    CHECK(detect_entities("", tok(""), g).empty());

    s = "I come from Colombia bartender";
    e = detect_entities(s, tok(s), g);
    REQUIRE(e.size() == 1);
    CHECK(e[0].gazetteer == "countries");

    s = "can I get a pint of cider and some peanuts";
    e = detect_entities(s, tok(s), g);
    for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i - 1].end <= e[i].begin);
    std::set<std::string> kinds;
    for (const auto& m : e) kinds.insert(m.gazetteer);
    CHECK(kinds == std::set<std::string>{"drinks", "snacks"});
  }

  TEST_CASE("focus") {
    const auto& ws = test::bundle().word_stats;
    CHECK(detect_focus({}, ws).focus_terms.empty());
    const auto f = detect_focus(tok("the the the"), ws);
    CHECK(f.focus_terms.empty());
    const auto g = detect_focus(tok("i lost my job and my apartment yesterday in glasgow"), ws);
    CHECK(g.focus_terms.size() <= 3);
    CHECK(!g.focus_terms.empty());
    for (const auto& w : g.focus_terms) CHECK(ws.stopwords.count(w) == 0);
  }

  TEST_CASE("perceive composes and is deterministic") {
    const auto& p = test::runtime().perceiver();
    const auto r = p.perceive({"not happy", "u", 0, {}});
    CHECK(r.sentiment.klass == SentimentClass::Negative);
    CHECK(r.categories.counts.count("negate") == 1);
    CHECK(r == p.perceive({"not happy", "u", 0, {}}));

    const auto e = p.perceive({"", "u", 0, {}});
    CHECK(e.sentiment.klass == SentimentClass::Neutral);
    CHECK(e.tokens.empty());
    CHECK(e.entities.empty());
    CHECK(e.focus.focus_terms.empty());
    CHECK(e.dialogue_act.label == DialogueAct::Other);
    CHECK(e.dialogue_act.confidence == 0.0);

    const auto line = p.perceive({"I come from Colombia bartender", "Juliana", 0, {}});
    CHECK_FALSE(line.has_entity("drinks"));
    CHECK(line.dialogue_act.label == DialogueAct::Statement);
  }
}
