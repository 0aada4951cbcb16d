#pragma once

// Session-based advisor: a human reports each guess and its tile colors, the
// service re-encodes the game state, consults a trained policy and answers
// with a concrete next word plus the surviving candidates.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "wordlab/engine.hpp"
#include "wordlab/letter_stats.hpp"
#include "wordlab/qlearn.hpp"
#include "wordlab/strategies.hpp"

namespace wordlab::advisor {

using json = nlohmann::json;

class PolicyStore {
 public:
  explicit PolicyStore(bool allow_best = false) : allow_best_(allow_best) {}

  void add(const std::string& id, PolicyMatrix pm) {
    if (pm.mode == StateMode::Best && !allow_best_) {
      throw Error(ErrorCode::InvalidConfig, "policy '" + id + "' uses the 'best' state encoding; enable it explicitly");
    }
    policies_[id] = std::make_shared<const PolicyMatrix>(std::move(pm));
  }

  std::shared_ptr<const PolicyMatrix> get(const std::string& id) const {
    auto it = policies_.find(id);
    if (it == policies_.end()) throw Error(ErrorCode::UnknownPolicy, "no policy named '" + id + "'");
    return it->second;
  }

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (const auto& [id, _] : policies_) out.push_back(id);
    return out;
  }

 private:
  bool allow_best_;
  std::map<std::string, std::shared_ptr<const PolicyMatrix>> policies_;
};

struct Recommendation {
  ActionKind action;
  Word word;
  std::size_t candidates_remaining;
  std::vector<Word> top_candidates;
};

struct SessionSnapshot {
  std::string id;
  std::string policy_id;
  StateKey state;
  GameStatus status = GameStatus::InProgress;
  std::vector<GuessRecord> history;
  std::optional<Recommendation> recommendation;
  std::int64_t created_ms = 0;
  std::int64_t updated_ms = 0;
};

struct AdvisorOptions {
  std::optional<std::uint64_t> seed;  // fixed seed makes session ids and picks reproducible
  std::size_t top_k = 10;
  PoolChoice pool = PoolChoice::Answers;
  std::optional<std::filesystem::path> journal_dir;
};

class AdvisorService {
 public:
  AdvisorService(std::shared_ptr<const WordLists> lists, PolicyStore policies, AdvisorOptions opts = {})
      : lists_(std::move(lists)),
        model_(LetterModel::from_answers(lists_->answers())),
        policies_(std::move(policies)),
        opts_(std::move(opts)),
        pool_(std::make_shared<const std::vector<Word>>(opts_.pool == PoolChoice::Answers ? lists_->answers()
                                                                                           : lists_->guesses())),
        openers_(std::make_shared<const OpenerLists>()),
        base_seed_(opts_.seed ? *opts_.seed : std::random_device{}()) {
    if (opts_.journal_dir) std::filesystem::create_directories(*opts_.journal_dir);
  }

  std::vector<std::string> policy_ids() const { return policies_.ids(); }

  SessionSnapshot create_session(const std::string& policy_id) {
    auto policy = policies_.get(policy_id);
    const std::uint64_t n = counter_.fetch_add(1);
    auto entry = std::make_shared<Entry>();
    entry->session.id = make_id(n);
    entry->session.policy_id = policy_id;
    entry->session.policy = std::move(policy);
    entry->session.ctx = GuessContext::fresh(pool_, openers_, mix_seed(base_seed_, n));
    entry->session.created_ms = entry->session.updated_ms = now_ms();
    recommend(entry->session);
    {
      std::unique_lock lock(sessions_mu_);
      sessions_[entry->session.id] = entry;
    }
    journal(entry->session, json{{"event", "create"}, {"policy_id", policy_id}});
    return snapshot(entry->session);
  }

  SessionSnapshot submit_feedback(const std::string& id, const Word& guess, const Feedback& fb) {
    auto entry = find(id);
    std::lock_guard lock(entry->mu);
    Session& s = entry->session;
    if (s.status != GameStatus::InProgress || s.history.size() >= static_cast<std::size_t>(kMaxRounds)) {
      throw Error(ErrorCode::SessionComplete, "session '" + id + "' is already finished");
    }
    if (!lists_->is_legal(guess)) throw Error(ErrorCode::IllegalGuess, "'" + guess.str() + "' is not in the guess list");

    // Validate before touching the session so a rejected report changes nothing.
    Knowledge updated = update_knowledge(s.ctx.knowledge, guess, fb);
    s.ctx.knowledge = std::move(updated);
    s.history.push_back({guess, fb});
    std::vector<Feedback> fbs;
    for (const auto& h : s.history) fbs.push_back(h.feedback);
    s.state = encode_state(s.policy->mode, fbs);
    s.updated_ms = now_ms();
    if (fb.is_win()) {
      s.status = GameStatus::Won;
      s.recommendation.reset();
    } else if (s.history.size() >= static_cast<std::size_t>(kMaxRounds)) {
      s.status = GameStatus::Lost;
      s.recommendation.reset();
    } else {
      recommend(s);
    }
    journal(s, json{{"event", "feedback"}, {"guess", guess.str()}, {"colors", fb.str()}});
    return snapshot(s);
  }

  SessionSnapshot get_session(const std::string& id) const {
    auto entry = find(id);
    std::lock_guard lock(entry->mu);
    return snapshot(entry->session);
  }

  // Surviving answers under everything the session knows, best-first.
  std::vector<Word> surviving(const std::string& id) const {
    auto entry = find(id);
    std::lock_guard lock(entry->mu);
    return survivors(entry->session.ctx.knowledge);
  }

  const LetterModel& model() const { return model_; }

 private:
  struct Session {
    std::string id;
    std::string policy_id;
    std::shared_ptr<const PolicyMatrix> policy;
    GuessContext ctx;
    StateKey state;
    GameStatus status = GameStatus::InProgress;
    std::vector<GuessRecord> history;
    std::optional<Recommendation> recommendation;
    std::int64_t created_ms = 0;
    std::int64_t updated_ms = 0;
  };

  struct Entry {
    mutable std::mutex mu;
    Session session;
  };

  static std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
        .count();
  }

  std::string make_id(std::uint64_t n) const {
    static constexpr char hex[] = "0123456789abcdef";
    std::uint64_t v = mix_seed(base_seed_ ^ 0x5e5510ULL, n);
    std::string id = "s" + std::to_string(n) + "-";
    for (int i = 0; i < 12; ++i, v >>= 4) id += hex[v & 0xf];
    return id;
  }

  std::shared_ptr<Entry> find(const std::string& id) const {
    std::shared_lock lock(sessions_mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "no session '" + id + "'");
    return it->second;
  }

  std::vector<Word> survivors(const Knowledge& k) const {
    std::vector<Word> out;
    for (const auto& w : *pool_) {
      if (matches_smart(k, w) && !k.was_guessed(w)) out.push_back(w);
    }
    std::stable_sort(out.begin(), out.end(), [&](const Word& a, const Word& b) {
      return green_probability(a, model_.raw) > green_probability(b, model_.raw);
    });
    return out;
  }

  void recommend(Session& s) const {
    const ActionKind action = s.policy->best(s.state);
    const Word word = next_guess(action, s.ctx);
    auto alive = survivors(s.ctx.knowledge);
    Recommendation r{action, word, alive.size(), {}};
    alive.resize(std::min(alive.size(), opts_.top_k));
    r.top_candidates = std::move(alive);
    s.recommendation = std::move(r);
  }

  static SessionSnapshot snapshot(const Session& s) {
    return SessionSnapshot{s.id, s.policy_id, s.state, s.status, s.history, s.recommendation, s.created_ms, s.updated_ms};
  }

  void journal(const Session& s, json event) const {
    if (!opts_.journal_dir) return;
    event["session_id"] = s.id;
    event["round"] = s.history.size();
    event["state"] = s.state.str();
    if (s.recommendation) {
      event["action"] = std::string(to_string(s.recommendation->action));
      event["word"] = s.recommendation->word.str();
    }
    std::lock_guard lock(journal_mu_);
    std::ofstream out(*opts_.journal_dir / (s.id + ".jsonl"), std::ios::app);
    out << event.dump() << '\n';
  }

  std::shared_ptr<const WordLists> lists_;
  LetterModel model_;
  PolicyStore policies_;
  AdvisorOptions opts_;
  std::shared_ptr<const std::vector<Word>> pool_;
  std::shared_ptr<const OpenerLists> openers_;
  std::uint64_t base_seed_;
  std::atomic<std::uint64_t> counter_{0};
  mutable std::shared_mutex sessions_mu_;
  mutable std::mutex journal_mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

inline std::string_view to_string(GameStatus s) {
  switch (s) {
    case GameStatus::InProgress: return "in_progress";
    case GameStatus::Won: return "won";
    case GameStatus::Lost: return "lost";
  }
  return "in_progress";
}

inline json colors_json(const Feedback& fb) {
  json arr = json::array();
  for (auto t : fb.tiles()) arr.push_back(std::string(to_string(t)));
  return arr;
}

inline json recommendation_json(const std::optional<Recommendation>& r) {
  if (!r) return nullptr;
  json top = json::array();
  for (const auto& w : r->top_candidates) top.push_back(w.str());
  return json{{"action", std::string(to_string(r->action))},
              {"word", r->word.str()},
              {"candidates_remaining", r->candidates_remaining},
              {"top_candidates", top}};
}

inline json state_json(StateKey k) { return json{{"greens", k.greens}, {"yellows", k.yellows}}; }

inline json snapshot_json(const SessionSnapshot& s) {
  json history = json::array();
  for (const auto& h : s.history) history.push_back(json{{"guess", h.guess.str()}, {"colors", colors_json(h.feedback)}});
  return json{{"session_id", s.id},
              {"policy_id", s.policy_id},
              {"status", std::string(to_string(s.status))},
              {"state", state_json(s.state)},
              {"history", history},
              {"recommendation", recommendation_json(s.recommendation)},
              {"created_ms", s.created_ms},
              {"updated_ms", s.updated_ms}};
}

// Flat response for a feedback submission; action/word are null once the game ends.
inline json feedback_response_json(const SessionSnapshot& s) {
  json j{{"session_id", s.id}, {"state", state_json(s.state)}, {"status", std::string(to_string(s.status))},
         {"round", s.history.size()}};
  if (s.recommendation) {
    const auto rec = recommendation_json(s.recommendation);
    for (const auto& [k, v] : rec.items()) j[k] = v;
  } else {
    j["action"] = nullptr;
    j["word"] = nullptr;
    j["candidates_remaining"] = nullptr;
    j["top_candidates"] = json::array();
  }
  return j;
}

}  // namespace wordlab::advisor
