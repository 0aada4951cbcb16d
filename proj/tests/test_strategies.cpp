#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oracles.hpp"
#include "wordlab/rng.hpp"
#include "wordlab/strategies.hpp"

using namespace wordlab;

namespace {

Feedback fb(std::string_view s) { return *Feedback::parse(s); }

std::shared_ptr<const std::vector<Word>> answers_pool() {
  static const auto p = std::make_shared<const std::vector<Word>>(oracle::canonical().answers());
  return p;
}

GuessContext fresh_ctx(std::uint64_t seed) {
  return GuessContext::fresh(answers_pool(), std::make_shared<const OpenerLists>(), seed);
}

// Constraints rebuilt from raw tile strings, independent of Knowledge.
oracle::Constraints constraints_from(const std::vector<std::pair<std::string, std::string>>& rounds) {
  oracle::Constraints c;
  for (const auto& [guess, tiles] : rounds) {
    for (int i = 0; i < 5; ++i) {
      if (tiles[i] == 'G') c.greens[i] = guess[i];
      if (tiles[i] == 'Y') c.yellows[guess[i]].insert(i);
    }
    for (int i = 0; i < 5; ++i) {
      if (tiles[i] != '.') continue;
      bool scored_elsewhere = false;
      for (int j = 0; j < 5; ++j) scored_elsewhere |= guess[j] == guess[i] && tiles[j] != '.';
      if (!scored_elsewhere) c.absents.insert(guess[i]);
    }
  }
  return c;
}

}  // namespace

TEST(Knowledge, DuplicateLetterUpdate) {
  const Knowledge k = update_knowledge({}, "babes"_w, fb("YYGG."));
  EXPECT_EQ(k.greens[2], 'b');
  EXPECT_EQ(k.greens[3], 'e');
  EXPECT_TRUE(k.is_yellow('b' - 'a'));
  EXPECT_TRUE(k.is_yellow('a' - 'a'));
  EXPECT_EQ(k.excluded['b' - 'a'], 0b00001);
  EXPECT_EQ(k.excluded['a' - 'a'], 0b00010);
  EXPECT_EQ(k.absents, 1u << ('s' - 'a'));
  EXPECT_TRUE(k.was_guessed("babes"_w));
  EXPECT_TRUE(matches_smart(k, "abbey"_w));
}

TEST(Knowledge, UpdateIsIdempotent) {
  const Knowledge once = update_knowledge({}, "crane"_w, fb(".Y..G"));
  EXPECT_EQ(update_knowledge(once, "crane"_w, fb(".Y..G")), once);
}

TEST(Knowledge, GrayDuplicateOfScoredLetterIsNotAbsent) {
  // "geese" against "those": only the final 'e' scores
  const Knowledge k = update_knowledge({}, "geese"_w, score_guess("geese"_w, "those"_w));
  EXPECT_FALSE(k.is_absent('e' - 'a'));
  EXPECT_TRUE(k.is_absent('g' - 'a'));
  EXPECT_TRUE(matches_smart(k, "those"_w));
}

TEST(Knowledge, Contradictions) {
  const Knowledge k = update_knowledge({}, "crane"_w, fb("G...."));
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  // different green at a settled position
  EXPECT_EQ(code_of([&] { update_knowledge(k, "slate"_w, fb("G....")); }), ErrorCode::Contradiction);
  // 'r' was absent, now green
  EXPECT_EQ(code_of([&] { update_knowledge(k, "trial"_w, fb(".G...")); }), ErrorCode::Contradiction);
  // 'c' known green, now reported gray everywhere
  EXPECT_EQ(code_of([&] { update_knowledge(k, "octet"_w, fb("....."));}), ErrorCode::Contradiction);
  // yellow excluded from all five positions
  Knowledge y;
  y = update_knowledge(y, "abbbb"_w, fb("Y...."));
  y = update_knowledge(y, "babbb"_w, fb(".Y..."));
  y = update_knowledge(y, "bbabb"_w, fb("..Y.."));
  y = update_knowledge(y, "bbbab"_w, fb("...Y."));
  EXPECT_EQ(code_of([&] { update_knowledge(y, "bbbba"_w, fb("....Y")); }), ErrorCode::Contradiction);
}

TEST(Filters, EmptyKnowledgeKeepsPool) {
  const auto& pool = *answers_pool();
  EXPECT_EQ(candidates_smart({}, pool), pool);
  EXPECT_EQ(candidates_exclude({}, pool), pool);
}

TEST(Filters, AllLettersAbsentEmptiesExclude) {
  Knowledge k;
  k.absents = (1u << 26) - 1;
  EXPECT_TRUE(candidates_exclude(k, *answers_pool()).empty());
}

TEST(Filters, FullGreensLeaveOnlyTheSecret) {
  const Knowledge k = update_knowledge({}, "crane"_w, fb("GGGGG"));
  EXPECT_EQ(candidates_smart(k, *answers_pool()), std::vector<Word>{"crane"_w});
}

TEST(Filters, SmallPoolExample) {
  // 'c' absent, 'e' present but not in the last slot
  Knowledge k;
  k.absents = 1u << ('c' - 'a');
  k.yellows = 1u << ('e' - 'a');
  k.excluded['e' - 'a'] = 1u << 4;
  const std::vector<Word> pool{"crane"_w, "slate"_w, "abbey"_w};
  const auto got = candidates_smart(k, pool);

  oracle::Constraints c;
  c.absents = {'c'};
  c.yellows['e'] = {4};
  std::vector<Word> want;
  for (const auto& w : pool) {
    if (oracle::smart_ok(c, w.str())) want.push_back(w);
  }
  EXPECT_EQ(got, want);
  EXPECT_EQ(got, std::vector<Word>{"abbey"_w});
}

TEST(Filters, SoundAndNestedOnRandomGames) {
  const auto& answers = *answers_pool();
  const auto& guesses = oracle::canonical().guesses();
  Rng rng(99);
  for (int game = 0; game < 300; ++game) {
    const Word secret = answers[rng.index(answers.size())];
    Knowledge k;
    std::vector<std::pair<std::string, std::string>> rounds;
    for (int r = 0; r < 4; ++r) {
      const Word g = guesses[rng.index(guesses.size())];
      const Feedback f = score_guess(g, secret);
      k = update_knowledge(k, g, f);
      rounds.emplace_back(g.str(), f.str());
    }
    ASSERT_TRUE(matches_smart(k, secret)) << secret.str();
    ASSERT_TRUE(matches_exclude(k, secret));
    const auto c = constraints_from(rounds);
    const auto smart = candidates_smart(k, answers);
    const auto excl = candidates_exclude(k, answers);
    const std::set<Word> excl_set(excl.begin(), excl.end());
    for (const auto& w : smart) ASSERT_TRUE(excl_set.count(w)) << w.str();
    for (const auto& w : answers) ASSERT_EQ(matches_smart(k, w), oracle::smart_ok(c, w.str())) << w.str();
  }
}

TEST(NextGuess, OpenerScriptsThenRandom) {
  auto ctx = fresh_ctx(1);
  EXPECT_EQ(next_guess(ActionKind::Probs1, ctx), "bowne"_w);
  EXPECT_EQ(ctx.probs1_cursor, 1);
  const std::vector<Word> p2{"looie"_w, "saury"_w, "chant"_w, "bided"_w, "primp"_w};
  for (const auto& w : p2) EXPECT_EQ(next_guess(ActionKind::Probs2, ctx), w);
  const Word sixth = next_guess(ActionKind::Probs2, ctx);
  EXPECT_NE(std::find(answers_pool()->begin(), answers_pool()->end(), sixth), answers_pool()->end());
  EXPECT_EQ(ctx.probs2_cursor, 6);
  EXPECT_EQ(ctx.probs1_cursor, 1);
}

TEST(NextGuess, RandomIsUniformOverRemaining) {
  std::vector<Word> pool{"crane"_w, "slate"_w, "abbey"_w, "babes"_w};
  auto ctx = GuessContext::fresh(std::make_shared<const std::vector<Word>>(pool), std::make_shared<const OpenerLists>(), 4);
  ctx.knowledge = update_knowledge({}, "crane"_w, score_guess("crane"_w, "abbey"_w));
  std::map<Word, int> hits;
  for (int i = 0; i < 3000; ++i) ++hits[next_guess(ActionKind::Random, ctx)];
  EXPECT_EQ(hits.count("crane"_w), 0u);
  for (const auto& w : {"slate"_w, "abbey"_w, "babes"_w}) {
    EXPECT_NEAR(hits[w], 1000, 120) << w.str();
  }
}

TEST(NextGuess, SmartDrawsSurvivorsAndFallsBack) {
  auto ctx = fresh_ctx(8);
  ctx.knowledge = update_knowledge({}, "crane"_w, score_guess("crane"_w, "cigar"_w));
  for (int i = 0; i < 50; ++i) {
    const Word w = next_guess(ActionKind::Smart, ctx);
    ASSERT_TRUE(matches_smart(ctx.knowledge, w));
    ASSERT_FALSE(ctx.knowledge.was_guessed(w));
    const Word e = next_guess(ActionKind::Exclude, ctx);
    ASSERT_TRUE(matches_exclude(ctx.knowledge, e));
  }
  auto solved = fresh_ctx(8);
  solved.knowledge = update_knowledge({}, "cigar"_w, fb("GGGGG"));
  // the only survivor was already guessed, so Smart degrades to a random word
  const Word w = next_guess(ActionKind::Smart, solved);
  EXPECT_NE(w, "cigar"_w);
}

TEST(NextGuess, SmartWithDeterminedKnowledgeReturnsSecret) {
  auto ctx = fresh_ctx(2);
  ctx.knowledge = update_knowledge({}, "cigar"_w, fb("GGGGG"));
  ctx.knowledge.guessed.clear();
  EXPECT_EQ(next_guess(ActionKind::Smart, ctx), "cigar"_w);
}

TEST(NextGuess, EmptyPoolThrows) {
  std::vector<Word> pool{"crane"_w};
  auto ctx = GuessContext::fresh(std::make_shared<const std::vector<Word>>(pool), std::make_shared<const OpenerLists>(), 0);
  ctx.knowledge = update_knowledge({}, "crane"_w, fb("....."));
  try {
    next_guess(ActionKind::Random, ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoolEmpty);
  }
}

TEST(NextGuess, SeededTrajectoriesRepeat) {
  auto a = fresh_ctx(42), b = fresh_ctx(42);
  for (int i = 0; i < 40; ++i) {
    const ActionKind act = kAllActions[static_cast<std::size_t>(i % kActionCount)];
    ASSERT_EQ(next_guess(act, a), next_guess(act, b));
  }
}

TEST(Actions, NamesRoundTrip) {
  for (auto a : kAllActions) EXPECT_EQ(parse_action(to_string(a)), a);
  EXPECT_FALSE(parse_action("greedy"));
}
