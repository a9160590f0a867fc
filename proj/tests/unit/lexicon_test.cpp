#include <cstdlib>
#include <filesystem>

#include "doctest.h"
#include "support.hpp"

#include "affect/lexicon.hpp"
#include "affect/util/text.hpp"

using namespace affect::lexicon;
namespace fs = std::filesystem;

namespace {

// Copy of the bundled lexicons that a test can break.
fs::path scratch_lexicons() {
  auto dir = test::temp_dir("lex");
  fs::copy(test::data_dir() + "/lexicons", dir, fs::copy_options::recursive);
  return dir;
}

LexiconError load_error(const fs::path& dir) {
  try {
    load_lexicons(dir.string());
  } catch (const LexiconError& e) {
    return e;
  }
  FAIL("expected a LexiconError");
  return LexiconError(LexiconError::Kind::FormatError, "", 0, "");
}

}  // namespace

TEST_SUITE("lexicon") {
  TEST_CASE("bundled positive list holds the words the negative profile strips") {
    const auto& b = test::bundle();
    for (const char* w : {"glad", "happy", "welcome", "great", "sir", "please"}) {
      CHECK(b.polarity.front().positive_words.count(w) == 1);
      CHECK(b.is_positive(w));
    }
  }

  TEST_CASE("vad row is read back verbatim") {
    const auto* e = test::bundle().vad.find("happy");
    REQUIRE(e != nullptr);
    CHECK(e->valence == doctest::Approx(8.21));
    CHECK(e->arousal == doctest::Approx(6.49));
    CHECK(e->dominance == doctest::Approx(7.09));
  }

  TEST_CASE("stem and exact category patterns") {
    const auto& cats = test::bundle().categories;
    CHECK(lookup_categories("happy", cats).count("posemo") == 1);

    CategoryLexicon only_exact({{"happy", false, {"posemo"}}}, {{"posemo", {"Positive emotion", CategoryGroup::Psychological}}});
    CHECK(only_exact.lookup("happen").empty());
    CHECK(only_exact.lookup("happy") == std::set<std::string>{"posemo"});

    // famil* is the only bundled pattern that prefixes "families".
    CHECK(lookup_categories("families", cats) == std::set<std::string>{"social", "family"});
    CHECK(lookup_categories("zzzz", cats).empty());
  }

  TEST_CASE("every word under a stem inherits the stem's categories") {
    const auto& cats = test::bundle().categories;
    std::size_t stems = 0;
    for (const auto& p : cats.entries()) {
      if (!p.is_stem) continue;
      ++stems;
      for (const char* suffix : {"", "s", "ing", "ed", "ness", "ly", "xyz"}) {
        const auto found = cats.lookup(p.stem + suffix);
        for (const auto& c : p.categories) CHECK_MESSAGE(found.count(c) == 1, p.pattern() << " vs " << p.stem + suffix);
      }
    }
    CHECK(stems > 20);
  }

  TEST_CASE("loading twice gives identical bundles") {
    const auto dir = test::data_dir() + "/lexicons";
    CHECK(load_lexicons(dir) == load_lexicons(dir));
  }

  TEST_CASE("bundled category dictionary covers the core categories") {
    const auto& reg = test::bundle().categories.registry();
    for (const char* id : {"posemo", "negemo", "social", "cogmech", "negate", "swear", "assent", "filler"})
      CHECK(reg.count(id) == 1);
    CHECK(test::bundle().categories.entries().size() >= 300);
  }

  TEST_CASE("every loaded VAD value lies in [1,9]") {
    for (const auto& [w, e] : test::bundle().vad.entries) {
      for (double v : {e.valence, e.arousal, e.dominance}) {
        CHECK(v >= 1.0);
        CHECK(v <= 9.0);
      }
    }
  }

  TEST_CASE("out-of-range VAD value is a load error, not clamped") {
    const auto dir = scratch_lexicons();
    test::write_file(dir / "vad.tsv", "# header\nhappy\t8.21\t6.49\t7.09\nodd\t9.5\t5\t5\n");
    const auto e = load_error(dir);
    CHECK(e.kind() == LexiconError::Kind::InvariantViolation);
    CHECK(e.line() == 3);
  }

  TEST_CASE("duplicate word in one file is rejected with its line") {
    const auto dir = scratch_lexicons();
    test::write_file(dir / "negative.tsv", "bad\nsad\nbad\n");
    const auto e = load_error(dir);
    CHECK(e.kind() == LexiconError::Kind::FormatError);
    CHECK(e.line() == 3);
  }

  TEST_CASE("malformed rows are format errors") {
    const auto dir = scratch_lexicons();
    test::write_file(dir / "intensifiers.tsv", "very\t1.5\nreally\n");
    const auto e = load_error(dir);
    CHECK(e.kind() == LexiconError::Kind::FormatError);
    CHECK(e.line() == 2);
  }

  TEST_CASE("missing required file") {
    const auto dir = scratch_lexicons();
    fs::remove(dir / "emoticons.tsv");
    CHECK(load_error(dir).kind() == LexiconError::Kind::MissingFile);
  }

  TEST_CASE("modifier invariants") {
    {
      const auto dir = scratch_lexicons();
      test::write_file(dir / "intensifiers.tsv", "very\t1.0\n");
      CHECK(load_error(dir).kind() == LexiconError::Kind::InvariantViolation);
    }
    {
      const auto dir = scratch_lexicons();
      test::write_file(dir / "diminishers.tsv", "slightly\t1.2\n");
      CHECK(load_error(dir).kind() == LexiconError::Kind::InvariantViolation);
    }
    {
      const auto dir = scratch_lexicons();
      test::write_file(dir / "diminishers.tsv", "not\t0.5\n");
      CHECK(load_error(dir).kind() == LexiconError::Kind::InvariantViolation);
    }
  }

  TEST_CASE("word in both polarity lists of one source is rejected") {
    const auto dir = scratch_lexicons();
    test::write_file(dir / "negative.tsv", "bad\nhappy\n");
    CHECK(load_error(dir).kind() == LexiconError::Kind::InvariantViolation);
  }

  TEST_CASE("category ids must be registered") {
    const auto dir = scratch_lexicons();
    test::write_file(dir / "categories.tsv", "happ*\tposemo,nosuch\n");
    CHECK(load_error(dir).kind() == LexiconError::Kind::InvariantViolation);
  }

  TEST_CASE("stem patterns carry exactly one trailing wildcard") {
    const auto dir = scratch_lexicons();
    test::write_file(dir / "categories.tsv", "ha*pp*\tposemo\n");
    CHECK(load_error(dir).kind() == LexiconError::Kind::FormatError);
  }

  TEST_CASE("entries are lowercased at load") {
    const auto dir = scratch_lexicons();
    test::write_file(dir / "positive.tsv", "Glad\nHAPPY\n");
    const auto b = load_lexicons(dir.string());
    CHECK(b.is_positive("glad"));
    CHECK(b.is_positive("happy"));
  }

  TEST_CASE("empty optional gazetteer is loaded but disabled") {
    const auto dir = scratch_lexicons();
    test::write_file(dir / "gazetteer_cocktails.tsv", "# nothing yet\n");
    const auto b = load_lexicons(dir.string());
    const auto* g = b.gazetteer("cocktails");
    REQUIRE(g != nullptr);
    CHECK(g->entries.empty());
    CHECK_FALSE(g->enabled());
    CHECK(b.gazetteer("drinks")->enabled());
  }

  TEST_CASE("load reports entry counts") {
    const auto& counts = test::bundle().counts;
    CHECK(counts.at("positive.tsv") == test::bundle().polarity.front().positive_words.size());
    CHECK(counts.at("vad.tsv") == test::bundle().vad.entries.size());
  }

  TEST_CASE("AFFECT_LEXICON_DIR overrides the fallback") {
    ::unsetenv("AFFECT_LEXICON_DIR");
    CHECK(resolve_lexicon_dir("/fallback") == "/fallback");
    ::setenv("AFFECT_LEXICON_DIR", "/elsewhere", 1);
    CHECK(resolve_lexicon_dir("/fallback") == "/elsewhere");
    ::unsetenv("AFFECT_LEXICON_DIR");
  }
}
