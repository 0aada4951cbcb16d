#pragma once

// JSON and CSV persistence for tables, search results, Q-tables, policies
// and training reports. Every CSV starts with a "# config: {...}" line so a
// file names the settings that produced it.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wordlab/engine.hpp"
#include "wordlab/letter_stats.hpp"
#include "wordlab/qlearn.hpp"
#include "wordlab/seq_search.hpp"

namespace wordlab::io {

using json = nlohmann::json;

inline WordLists load_word_lists_file(const std::filesystem::path& path, const LoadOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open word list '" + path.string() + "'");
  return load_word_lists(in, opts);
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

// Writes to a sibling temp file and renames, so readers never see a partial file.
inline void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + tmp.string() + "'");
    out << contents;
  }
  std::filesystem::rename(tmp, path);
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline std::string csv_header(const json& config) { return "# config: " + config.dump() + "\n"; }

inline std::string fmt_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

inline json words_json(std::span<const Word> ws) {
  json arr = json::array();
  for (const auto& w : ws) arr.push_back(w.str());
  return arr;
}

inline json search_result_json(const SearchResult& r) {
  return json{{"objective", std::string(to_string(r.objective))},
              {"n", r.requested_n},
              {"sequence", words_json(r.sequence)},
              {"per_word_scores", r.per_word_scores},
              {"objective_value", r.objective_value},
              {"ladder_levels", r.ladder_levels},
              {"unique_letters", r.unique_letter_count()},
              {"mean_contribution_per_letter", per_letter_contribution(r)},
              {"exhausted", r.exhausted}};
}

inline json action_values_json(const ActionValues& row) {
  json j = json::object();
  for (auto a : kAllActions) j[std::string(to_string(a))] = row[static_cast<int>(a)];
  return j;
}

inline json states_json(const std::array<ActionValues, kStateCount>& rows) {
  json j = json::object();
  for (int s = 0; s < kStateCount; ++s) j[StateKey::from_index(s).str()] = action_values_json(rows[s]);
  return j;
}

inline std::array<ActionValues, kStateCount> parse_states(const json& states) {
  std::array<ActionValues, kStateCount> rows{};
  if (!states.is_object()) throw Error(ErrorCode::InvalidConfig, "'states' must be an object");
  for (const auto& [key, actions] : states.items()) {
    auto sk = StateKey::parse(key);
    if (!sk) throw Error(ErrorCode::InvalidConfig, "bad state key '" + key + "'");
    if (!actions.is_object()) throw Error(ErrorCode::InvalidConfig, "state '" + key + "' must map actions to values");
    for (const auto& [name, value] : actions.items()) {
      auto a = parse_action(name);
      if (!a) throw Error(ErrorCode::InvalidConfig, "unknown action '" + name + "'");
      if (!value.is_number()) throw Error(ErrorCode::InvalidConfig, "value for " + key + "/" + name + " is not a number");
      rows[sk->index()][static_cast<int>(*a)] = value.get<double>();
    }
  }
  return rows;
}

inline json qtable_json(const QTable& q, StateMode mode, const json& config = json::object()) {
  return json{{"kind", "qtable"}, {"mode", std::string(to_string(mode))}, {"states", states_json(q.rows())},
              {"config", config}};
}

inline QTable qtable_from_json(const json& j) {
  QTable q;
  const auto rows = parse_states(j.at("states"));
  for (int s = 0; s < kStateCount; ++s) {
    for (auto a : kAllActions) q.set(StateKey::from_index(s), a, rows[s][static_cast<int>(a)]);
  }
  return q;
}

inline StateMode mode_from_json(const json& j) {
  auto m = parse_mode(j.value("mode", std::string("last")));
  if (!m) throw Error(ErrorCode::InvalidConfig, "unknown state mode in policy file");
  return *m;
}

inline json policy_json(const PolicyMatrix& pm, const json& config = json::object()) {
  return json{{"kind", "policy"},
              {"mode", std::string(to_string(pm.mode))},
              {"n_runs_averaged", pm.n_runs_averaged},
              {"states", states_json(pm.rows)},
              {"config", config}};
}

// Accepts either a saved policy matrix or a raw Q-table (normalized on load).
inline PolicyMatrix policy_from_json(const json& j) {
  const auto kind = j.value("kind", std::string("policy"));
  const auto mode = mode_from_json(j);
  if (kind == "qtable") {
    QTable q = qtable_from_json(j);
    return average_normalized_policy(std::span<const QTable>(&q, 1), mode);
  }
  if (kind != "policy") throw Error(ErrorCode::InvalidConfig, "unknown file kind '" + kind + "'");
  PolicyMatrix pm;
  pm.rows = parse_states(j.at("states"));
  pm.n_runs_averaged = j.value("n_runs_averaged", 1);
  pm.mode = mode;
  return pm;
}

inline QTable policy_as_qtable(const PolicyMatrix& pm) {
  QTable q;
  for (int s = 0; s < kStateCount; ++s) {
    for (auto a : kAllActions) q.set(StateKey::from_index(s), a, pm.rows[s][static_cast<int>(a)]);
  }
  return q;
}

inline json hyperparams_json(const Hyperparams& hp) {
  return json{{"epsilon", hp.epsilon},         {"alpha", hp.alpha},
              {"discount", hp.discount},       {"episodes", hp.episodes},
              {"reward_yellow", hp.reward_yellow}, {"reward_green", hp.reward_green},
              {"reward_win", hp.reward_win},   {"reward_lose", hp.reward_lose}};
}

inline json report_json(const TrainingReport& r, const json& config = json::object()) {
  json hist = json::object();
  for (const auto& [reward, n] : r.reward_histogram) hist[std::to_string(reward)] = n;
  json final_hist = json::object();
  for (const auto& [reward, n] : r.final_reward_histogram) final_hist[std::to_string(reward)] = n;
  return json{{"seed", r.seed},
              {"mode", std::string(to_string(r.mode))},
              {"hyperparams", hyperparams_json(r.hp)},
              {"episodes", r.episodes},
              {"wins", r.wins},
              {"win_rate", r.win_rate()},
              {"mean_reward", r.mean_reward},
              {"wins_by_round", r.wins_by_round},
              {"game_lengths", r.game_lengths},
              {"reward_histogram", hist},
              {"final_reward_histogram", final_hist},
              {"rolling_window", r.rolling_window},
              {"config", config}};
}

inline std::string reward_histogram_csv(const TrainingReport& r, const json& config) {
  std::string out = csv_header(config) + "kind,reward,games\n";
  for (const auto& [reward, n] : r.reward_histogram) out += "total," + std::to_string(reward) + "," + std::to_string(n) + "\n";
  for (const auto& [reward, n] : r.final_reward_histogram) {
    out += "final," + std::to_string(reward) + "," + std::to_string(n) + "\n";
  }
  return out;
}

inline std::string game_lengths_csv(const TrainingReport& r, const json& config) {
  std::string out = csv_header(config) + "rounds,games,wins\n";
  for (int i = 0; i < kMaxRounds; ++i) {
    out += std::to_string(i + 1) + "," + std::to_string(r.game_lengths[i]) + "," + std::to_string(r.wins_by_round[i]) +
           "\n";
  }
  return out;
}

inline std::string rolling_win_rate_csv(const TrainingReport& r, const json& config) {
  std::string out = csv_header(config) + "episode,rolling_win_rate\n";
  for (std::size_t i = 0; i < r.rolling_win_rate.size(); ++i) {
    out += std::to_string(i + 1) + "," + fmt_double(r.rolling_win_rate[i]) + "\n";
  }
  return out;
}

// Heatmap layout: one row per state, one column per action.
inline std::string policy_heatmap_csv(const PolicyMatrix& pm, const json& config) {
  std::string out = csv_header(config) + "greens,yellows,random,probs1,probs2,smart,exclude,best\n";
  for (int s = 0; s < kStateCount; ++s) {
    const auto k = StateKey::from_index(s);
    out += std::to_string(k.greens) + "," + std::to_string(k.yellows);
    for (double v : pm.rows[s]) out += "," + fmt_double(v);
    out += "," + std::string(to_string(pm.best(k))) + "\n";
  }
  return out;
}

inline std::string table_csv(const LetterProbs& probs, const json& config) {
  std::ostringstream s;
  write_table_csv(s, probs);
  return csv_header(config) + s.str();
}

}  // namespace wordlab::io
