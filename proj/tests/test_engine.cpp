#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "oracles.hpp"
#include "wordlab/engine.hpp"
#include "wordlab/rng.hpp"

using namespace wordlab;

namespace {

Feedback fb(std::string_view s) { return *Feedback::parse(s); }

WordLists small_lists() {
  std::vector<Word> words{"crane"_w, "slate"_w, "abbey"_w, "babes"_w, "xylyl"_w};
  return WordLists({words.begin(), words.begin() + 3}, words);
}

}  // namespace

TEST(Word, NormalizesCaseAndRejectsJunk) {
  EXPECT_EQ(Word::parse("CrAnE")->str(), "crane");
  EXPECT_FALSE(Word::parse("abcd"));
  EXPECT_FALSE(Word::parse("abcdef"));
  EXPECT_FALSE(Word::parse("abc1e"));
  EXPECT_FALSE(Word::parse("caf\xc3\xa9"));
  EXPECT_THROW(Word("ab de"), Error);
}

TEST(LoadWordLists, CanonicalFileSplitsAnswersFirst) {
  const auto& lists = oracle::canonical();
  EXPECT_EQ(lists.answers().size(), 2315u);
  EXPECT_EQ(lists.guesses().size(), 12972u);
  EXPECT_EQ(lists.answers().front(), "cigar"_w);
  for (std::size_t i = 0; i < lists.answers().size(); ++i) ASSERT_EQ(lists.answers()[i], lists.guesses()[i]);
  EXPECT_TRUE(lists.is_legal("saree"_w));
  EXPECT_FALSE(lists.is_legal("zzzzz"_w));
}

TEST(LoadWordLists, EmptyStreamInStrictModeIsWrongCount) {
  std::istringstream in("");
  try {
    load_word_lists(in);
    FAIL() << "expected WrongCount";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongCount);
  }
}

TEST(LoadWordLists, MalformedLineReportsLineNumber) {
  std::istringstream in("crane\nslate\nabcde7\n");
  try {
    load_word_lists(in, LoadOptions{.strict = false});
    FAIL() << "expected MalformedWord";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedWord);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(LoadWordLists, DuplicatesRejectedAndBlankLinesSkipped) {
  std::istringstream dup("crane\nCRANE\n");
  EXPECT_THROW(load_word_lists(dup, LoadOptions{.strict = false}), Error);

  std::istringstream blanks("crane\n\nslate\r\n");
  auto lists = load_word_lists(blanks, LoadOptions{.strict = false, .answer_count = 1});
  ASSERT_EQ(lists.guesses().size(), 2u);
  EXPECT_EQ(lists.answers(), std::vector<Word>{"crane"_w});
  EXPECT_EQ(lists.guesses()[1], "slate"_w);
}

TEST(ScoreGuess, IdentityIsAllGreen) {
  for (const auto& w : oracle::canonical().answers()) ASSERT_TRUE(score_guess(w, w).is_win());
}

TEST(ScoreGuess, DuplicateLetters) {
  EXPECT_EQ(score_guess("babes"_w, "abbey"_w), fb("YYGG."));
  EXPECT_EQ(score_guess("xxxxx"_w, "crane"_w), fb("....."));
  // the single secret 'e' is used by the green, so the earlier e tiles stay gray
  EXPECT_EQ(score_guess("geese"_w, "those"_w), fb("...GG"));
  EXPECT_EQ(score_guess("eerie"_w, "crepe"_w), fb("Y.Y.G"));
}

TEST(ScoreGuess, MatchesBruteForceOracleOnRandomPairs) {
  const auto& g = oracle::canonical().guesses();
  Rng rng(7);
  for (int n = 0; n < 20000; ++n) {
    const Word& guess = g[rng.index(g.size())];
    const Word& secret = g[rng.index(g.size())];
    ASSERT_EQ(score_guess(guess, secret).str(), oracle::score(guess.str(), secret.str()))
        << guess.str() << " vs " << secret.str();
  }
}

TEST(ScoreGuess, GreenCountAndLetterBudgetProperties) {
  const auto& g = oracle::canonical().guesses();
  Rng rng(11);
  for (int n = 0; n < 5000; ++n) {
    const Word guess = g[rng.index(g.size())];
    const Word secret = g[rng.index(g.size())];
    const Feedback f = score_guess(guess, secret);
    int same = 0;
    for (int i = 0; i < kWordLength; ++i) same += guess[i] == secret[i];
    ASSERT_EQ(f.green_count(), same);
    ASSERT_LE(f.green_count() + f.yellow_count(), kWordLength);
    std::map<char, int> scored, in_secret;
    for (int i = 0; i < kWordLength; ++i) {
      if (f[i] != TileColor::Gray) ++scored[guess[i]];
      ++in_secret[secret[i]];
    }
    for (auto [c, k] : scored) ASSERT_LE(k, in_secret[c]);
  }
}

TEST(TryWord, ImmediateWin) {
  const auto lists = small_lists();
  auto [f, s] = try_word(GameState::start("crane"_w), "crane"_w, lists);
  EXPECT_TRUE(f.is_win());
  EXPECT_EQ(s.status, GameStatus::Won);
  EXPECT_EQ(s.round(), 1);
  EXPECT_THROW(try_word(s, "slate"_w, lists), Error);
}

TEST(TryWord, SixMissesLose) {
  const auto lists = small_lists();
  GameState s = GameState::start("crane"_w);
  for (int i = 0; i < 6; ++i) {
    ASSERT_EQ(s.status, GameStatus::InProgress);
    s = try_word(s, i % 2 ? "slate"_w : "abbey"_w, lists).second;
  }
  EXPECT_EQ(s.status, GameStatus::Lost);
  EXPECT_EQ(s.round(), 6);
  try {
    try_word(s, "crane"_w, lists);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GameOver);
  }
}

TEST(TryWord, IllegalGuessUnlessRelaxed) {
  const auto lists = small_lists();
  try {
    try_word(GameState::start("crane"_w), "zzzzz"_w, lists);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllegalGuess);
  }
  auto [f, s] = try_word(GameState::start("crane"_w), "zzzzz"_w, lists, TryOptions{.enforce_legal = false});
  EXPECT_EQ(f, fb("....."));
  EXPECT_EQ(s.round(), 1);
}

TEST(TryWord, ReplayReproducesHistory) {
  const auto& lists = oracle::canonical();
  Rng rng(3);
  for (int game = 0; game < 200; ++game) {
    const Word secret = lists.answers()[rng.index(lists.answers().size())];
    GameState s = GameState::start(secret);
    while (s.status == GameStatus::InProgress) {
      s = try_word(s, lists.guesses()[rng.index(lists.guesses().size())], lists).second;
    }
    ASSERT_LE(s.round(), kMaxRounds);
    GameState replay = GameState::start(secret);
    for (const auto& h : s.history) {
      auto [f, next] = try_word(replay, h.guess, lists);
      ASSERT_EQ(f, h.feedback);
      replay = next;
    }
    ASSERT_EQ(replay.history, s.history);
    ASSERT_EQ(replay.status, s.status);
  }
}
