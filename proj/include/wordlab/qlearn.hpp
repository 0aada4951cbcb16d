#pragma once

// Tabular Q-learning over (greens, yellows) states and the five guess
// actions, plus the episode loop, training statistics and policy averaging.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordlab/engine.hpp"
#include "wordlab/rng.hpp"
#include "wordlab/strategies.hpp"

namespace wordlab {

struct StateKey {
  int greens = 0;
  int yellows = 0;

  // Row-major over the triangle g + y <= 5: (0,0)..(0,5), (1,0)..(1,4), ...
  constexpr int index() const { return greens * (13 - greens) / 2 + yellows; }

  static constexpr StateKey from_index(int idx) {
    int g = 0;
    while (idx >= kWordLength + 1 - g) {
      idx -= kWordLength + 1 - g;
      ++g;
    }
    return StateKey{g, idx};
  }

  constexpr bool valid() const { return greens >= 0 && yellows >= 0 && greens + yellows <= kWordLength; }

  std::string str() const { return std::to_string(greens) + "," + std::to_string(yellows); }

  static std::optional<StateKey> parse(std::string_view s) {
    if (s.size() != 3 || s[1] != ',' || s[0] < '0' || s[0] > '5' || s[2] < '0' || s[2] > '5') return std::nullopt;
    StateKey k{s[0] - '0', s[2] - '0'};
    if (!k.valid()) return std::nullopt;
    return k;
  }

  constexpr auto operator<=>(const StateKey&) const = default;
};

inline constexpr int kStateCount = 21;

enum class StateMode { Last, Best };

inline std::string_view to_string(StateMode m) { return m == StateMode::Last ? "last" : "best"; }

inline std::optional<StateMode> parse_mode(std::string_view s) {
  if (s == "last") return StateMode::Last;
  if (s == "best") return StateMode::Best;
  return std::nullopt;
}

struct Hyperparams {
  double epsilon = 0.02;
  double alpha = 0.02;
  double discount = 0.05;
  int episodes = 10000;
  double reward_yellow = 2.0;
  double reward_green = 5.0;
  double reward_win = 25.0;
  double reward_lose = -15.0;

  void validate() const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw Error(ErrorCode::InvalidConfig, "epsilon must lie in [0, 1]");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidConfig, "alpha must lie in (0, 1]");
    if (!(discount >= 0.0 && discount < 1.0)) throw Error(ErrorCode::InvalidConfig, "discount must lie in [0, 1)");
    if (episodes < 1) throw Error(ErrorCode::InvalidConfig, "episodes must be at least 1");
  }
};

using ActionValues = std::array<double, kActionCount>;

class QTable {
 public:
  double get(StateKey s, ActionKind a) const { return values_[s.index()][static_cast<int>(a)]; }
  void set(StateKey s, ActionKind a, double v) { values_[s.index()][static_cast<int>(a)] = v; }
  const ActionValues& row(StateKey s) const { return values_[s.index()]; }
  const std::array<ActionValues, kStateCount>& rows() const { return values_; }

  double max_value(StateKey s) const {
    const auto& r = row(s);
    return *std::max_element(r.begin(), r.end());
  }

  bool operator==(const QTable&) const = default;

 private:
  std::array<ActionValues, kStateCount> values_{};
};

// First maximal action in ActionKind order.
inline ActionKind argmax_action(const ActionValues& row) {
  return static_cast<ActionKind>(std::max_element(row.begin(), row.end()) - row.begin());
}

enum class Outcome { NonTerminal, Win, Lose };

inline double step_reward(const Feedback& fb, Outcome outcome, const Hyperparams& hp) {
  double r = hp.reward_yellow * fb.yellow_count() + hp.reward_green * fb.green_count();
  if (outcome == Outcome::Win) r += hp.reward_win;
  if (outcome == Outcome::Lose) r += hp.reward_lose;
  return r;
}

// Last: counts of the most recent feedback. Best: running maximum of greens
// and of yellows, with yellows trimmed so the pair stays inside the triangle.
inline StateKey encode_state(StateMode mode, std::span<const Feedback> history) {
  if (history.empty()) return {0, 0};
  if (mode == StateMode::Last) return {history.back().green_count(), history.back().yellow_count()};
  int g = 0, y = 0;
  for (const auto& fb : history) {
    g = std::max(g, fb.green_count());
    y = std::max(y, fb.yellow_count());
  }
  return {g, std::min(y, kWordLength - g)};
}

inline void q_update(QTable& q, StateKey s, ActionKind a, double reward, StateKey next, bool terminal,
                     const Hyperparams& hp) {
  const double target = reward + (terminal ? 0.0 : hp.discount * q.max_value(next));
  const double old = q.get(s, a);
  q.set(s, a, old + hp.alpha * (target - old));
}

inline ActionKind select_action(const QTable& q, StateKey s, double epsilon, Rng& rng) {
  if (rng.uniform() < epsilon) return kAllActions[rng.index(kActionCount)];
  return argmax_action(q.row(s));
}

struct Transition {
  StateKey state;
  ActionKind action;
  Word guess;
  Feedback feedback;
  double reward;
  StateKey next;
};

struct EpisodeLog {
  Word secret;
  std::vector<Transition> transitions;
  double total_reward = 0.0;
  int rounds = 0;
  bool won = false;
};

enum class PoolChoice { Answers, All };

// Everything an episode needs that does not change between episodes.
struct Environment {
  std::shared_ptr<const WordLists> lists;
  std::shared_ptr<const std::vector<Word>> pool;
  std::shared_ptr<const OpenerLists> openers;

  static Environment make(std::shared_ptr<const WordLists> lists, PoolChoice choice = PoolChoice::Answers,
                          OpenerLists openers = {}) {
    auto pool = std::make_shared<const std::vector<Word>>(choice == PoolChoice::Answers ? lists->answers()
                                                                                        : lists->guesses());
    return Environment{std::move(lists), std::move(pool), std::make_shared<const OpenerLists>(std::move(openers))};
  }
};

struct EpisodeOptions {
  std::optional<Word> secret;
  std::optional<Knowledge> knowledge;  // pre-seeded constraints
  bool learn = true;
};

// Plays one game: select_action -> next_guess -> try_word -> step_reward ->
// q_update per round. The win/lose bonus lands on the final transition.
inline EpisodeLog run_episode(const Environment& env, QTable& q, const Hyperparams& hp, StateMode mode, Rng& rng,
                              const EpisodeOptions& opts = {}) {
  const auto& answers = env.lists->answers();
  EpisodeLog log;
  log.secret = opts.secret ? *opts.secret : answers[rng.index(answers.size())];
  GuessContext ctx = GuessContext::fresh(env.pool, env.openers, rng.next());
  if (opts.knowledge) ctx.knowledge = *opts.knowledge;

  GameState game = GameState::start(log.secret);
  std::vector<Feedback> seen;
  StateKey s{0, 0};
  while (game.status == GameStatus::InProgress) {
    const ActionKind a = select_action(q, s, hp.epsilon, rng);
    const Word guess = next_guess(a, ctx);
    auto [fb, next_game] = try_word(game, guess, *env.lists);
    game = std::move(next_game);
    ctx.knowledge = update_knowledge(std::move(ctx.knowledge), guess, fb);
    seen.push_back(fb);

    const Outcome outcome = game.status == GameStatus::Won    ? Outcome::Win
                            : game.status == GameStatus::Lost ? Outcome::Lose
                                                              : Outcome::NonTerminal;
    const double r = step_reward(fb, outcome, hp);
    const StateKey s_next = encode_state(mode, seen);
    if (opts.learn) q_update(q, s, a, r, s_next, outcome != Outcome::NonTerminal, hp);
    log.transitions.push_back({s, a, guess, fb, r, s_next});
    log.total_reward += r;
    s = s_next;
  }
  log.rounds = game.round();
  log.won = game.status == GameStatus::Won;
  return log;
}

struct TrainingReport {
  std::uint64_t seed = 0;
  Hyperparams hp;
  StateMode mode = StateMode::Last;
  int episodes = 0;
  int wins = 0;
  std::array<int, kMaxRounds> wins_by_round{};    // index r-1: games won on round r
  std::array<int, kMaxRounds> game_lengths{};     // index r-1: games lasting r rounds
  std::map<long long, int> reward_histogram;      // total episode reward -> games
  std::map<long long, int> final_reward_histogram;  // reward of the last round -> games
  std::vector<double> rolling_win_rate;           // trailing-window rate after each episode
  int rolling_window = 100;
  double mean_reward = 0.0;

  double win_rate() const { return episodes ? static_cast<double>(wins) / episodes : 0.0; }

  void record(const EpisodeLog& log) {
    ++episodes;
    if (log.won) {
      ++wins;
      ++wins_by_round[static_cast<std::size_t>(log.rounds - 1)];
    }
    ++game_lengths[static_cast<std::size_t>(log.rounds - 1)];
    ++reward_histogram[std::llround(log.total_reward)];
    if (!log.transitions.empty()) ++final_reward_histogram[std::llround(log.transitions.back().reward)];
    mean_reward += (log.total_reward - mean_reward) / episodes;
    recent_.push_back(log.won);
    window_wins_ += log.won;
    if (static_cast<int>(recent_.size()) > rolling_window) {
      window_wins_ -= recent_[recent_.size() - static_cast<std::size_t>(rolling_window) - 1];
    }
    const int span = std::min<int>(static_cast<int>(recent_.size()), rolling_window);
    rolling_win_rate.push_back(static_cast<double>(window_wins_) / span);
  }

 private:
  std::vector<char> recent_;
  int window_wins_ = 0;
};

struct TrainResult {
  QTable q;
  TrainingReport report;
};

inline TrainResult train(const Environment& env, const Hyperparams& hp, StateMode mode, std::uint64_t seed) {
  hp.validate();
  TrainResult out;
  out.report.seed = seed;
  out.report.hp = hp;
  out.report.mode = mode;
  Rng rng(seed);
  for (int e = 0; e < hp.episodes; ++e) out.report.record(run_episode(env, out.q, hp, mode, rng));
  return out;
}

// Plays greedily from fixed action values without learning.
inline TrainingReport evaluate(const Environment& env, const QTable& q, StateMode mode, int episodes,
                               std::uint64_t seed) {
  if (episodes < 1) throw Error(ErrorCode::InvalidConfig, "episodes must be at least 1");
  Hyperparams hp;
  hp.epsilon = 0.0;
  hp.episodes = episodes;
  TrainingReport rep;
  rep.seed = seed;
  rep.hp = hp;
  rep.mode = mode;
  Rng rng(seed);
  QTable frozen = q;
  EpisodeOptions opts;
  opts.learn = false;
  for (int e = 0; e < episodes; ++e) rep.record(run_episode(env, frozen, hp, mode, rng, opts));
  return rep;
}

struct PolicyMatrix {
  std::array<ActionValues, kStateCount> rows{};
  int n_runs_averaged = 0;
  StateMode mode = StateMode::Last;

  const ActionValues& row(StateKey s) const { return rows[s.index()]; }
  ActionKind best(StateKey s) const { return argmax_action(row(s)); }
};

// Per-state mean across runs, then each row min-max scaled to [0, 1]; a
// constant row becomes all zeros.
inline PolicyMatrix average_normalized_policy(std::span<const QTable> runs, StateMode mode = StateMode::Last) {
  if (runs.empty()) throw Error(ErrorCode::InvalidConfig, "need at least one Q-table to average");
  PolicyMatrix pm;
  pm.n_runs_averaged = static_cast<int>(runs.size());
  pm.mode = mode;
  for (int s = 0; s < kStateCount; ++s) {
    ActionValues mean{};
    for (const auto& q : runs) {
      for (int a = 0; a < kActionCount; ++a) mean[a] += q.rows()[s][a];
    }
    for (auto& v : mean) v /= static_cast<double>(runs.size());
    const auto [lo, hi] = std::minmax_element(mean.begin(), mean.end());
    const double low = *lo, range = *hi - *lo;
    for (int a = 0; a < kActionCount; ++a) pm.rows[s][a] = range > 0.0 ? (mean[a] - low) / range : 0.0;
  }
  return pm;
}

}  // namespace wordlab
