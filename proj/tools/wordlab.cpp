// wordlab command-line driver: letter statistics, opener search, Q-learning
// training, policy averaging, evaluation and the advisor HTTP service.

#include <filesystem>
#include <future>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wordlab/advisor_http.hpp"
#include "wordlab/io.hpp"
#include "wordlab/stats.hpp"
#include "wordlab/wordlab.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wordlab;

namespace {

struct CommonOptions {
  std::string words = WORDLAB_DEFAULT_WORDS;
  std::string out;
  std::string pool = "all";
};

struct SearchOptions {
  std::string objective = "both";
  int n = 0;  // 0: every length 1..5
  std::vector<int> ladder{0, 1, 2, 3, 4, 5};
  bool allow_same_position = false;
  std::string overlap = "multiset";
  bool sweep = false;
};

struct TrainOptions {
  std::string mode = "last";
  Hyperparams hp;
  std::vector<std::uint64_t> seeds;
};

struct EvaluateOptions {
  std::string policy;
  int episodes = 10000;
  std::uint64_t seed = 1;
};

struct ServeOptions {
  std::vector<std::string> policies;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::uint64_t> seed;
  std::string journal;
  bool allow_best = false;
  std::size_t top_k = 10;
};

PoolChoice parse_pool(const std::string& s) {
  if (s == "answers") return PoolChoice::Answers;
  if (s == "all") return PoolChoice::All;
  throw Error(ErrorCode::InvalidConfig, "--pool must be 'answers' or 'all'");
}

StateMode require_mode(const std::string& s) {
  auto m = parse_mode(s);
  if (!m) throw Error(ErrorCode::InvalidConfig, "--mode must be 'last' or 'best'");
  return *m;
}

void emit(const fs::path& dir, const std::string& name, const std::string& contents) {
  if (dir.empty()) return;
  io::write_file(dir / name, contents);
}

int run_stats(const CommonOptions& common) {
  const auto lists = io::load_word_lists_file(common.words);
  const auto model = LetterModel::from_answers(lists.answers());
  const json config{{"command", "stats"}, {"words", common.words}};

  std::vector<double> tglp, ll;
  std::string scores = io::csv_header(config) + "word,is_answer,green_probability,log_likelihood,unique_letters\n";
  for (std::size_t i = 0; i < lists.guesses().size(); ++i) {
    const Word& w = lists.guesses()[i];
    tglp.push_back(green_probability(w, model.raw));
    ll.push_back(word_log_likelihood(w, model.smoothed));
    scores += w.str() + "," + (i < lists.answers().size() ? "1" : "0") + "," + io::fmt_double(tglp.back()) + "," +
              io::fmt_double(ll.back()) + "," + std::to_string(w.unique_letters()) + "\n";
  }

  json top = json::array();
  for (int i = 0; i < kWordLength; ++i) {
    int best = 0;
    for (int l = 1; l < kAlphabetSize; ++l) {
      if (model.raw.prob(i, l) > model.raw.prob(i, best)) best = l;
    }
    top.push_back(std::string(1, static_cast<char>('a' + best)));
  }
  const json summary{{"config", config},
                     {"source_count", model.raw.source_count()},
                     {"most_likely_letter_by_position", top},
                     {"spearman_green_probability_vs_log_likelihood", spearman(tglp, ll)}};

  const fs::path out = common.out;
  emit(out, "letter_table.csv", io::table_csv(model.raw.probs(), config));
  emit(out, "letter_table_smoothed.csv", io::table_csv(model.smoothed.probs(), config));
  emit(out, "word_scores.csv", scores);
  emit(out, "stats.json", io::dump(summary));
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int run_search(const CommonOptions& common, const SearchOptions& opts) {
  const auto lists = io::load_word_lists_file(common.words);
  const auto model = LetterModel::from_answers(lists.answers());
  const auto& candidates = parse_pool(common.pool) == PoolChoice::All ? lists.guesses() : lists.answers();

  RepeatPolicy policy;
  policy.ladder = opts.ladder;
  policy.forbid_same_position_repeat = !opts.allow_same_position;
  if (opts.overlap == "multiset") {
    policy.overlap = OverlapCount::Multiset;
  } else if (opts.overlap == "distinct") {
    policy.overlap = OverlapCount::Distinct;
  } else {
    throw Error(ErrorCode::InvalidConfig, "--overlap must be 'multiset' or 'distinct'");
  }
  policy.validate();

  std::vector<Objective> objectives;
  if (opts.objective == "both") {
    objectives = {Objective::Tglp, Objective::LogLikelihood};
  } else if (auto o = parse_objective(opts.objective)) {
    objectives = {*o};
  } else {
    throw Error(ErrorCode::InvalidConfig, "--objective must be 'tglp', 'll' or 'both'");
  }
  if (opts.n < 0 || opts.n > 5) throw Error(ErrorCode::InvalidConfig, "--n must be between 1 and 5");
  std::vector<int> lengths;
  if (opts.n == 0) {
    lengths = {1, 2, 3, 4, 5};
  } else {
    lengths = {opts.n};
  }

  const json config{{"command", "search"},
                    {"words", common.words},
                    {"pool", common.pool},
                    {"objective", opts.objective},
                    {"n", lengths},
                    {"ladder", policy.ladder},
                    {"forbid_same_position_repeat", policy.forbid_same_position_repeat},
                    {"overlap", opts.overlap},
                    {"sweep", opts.sweep}};
  const fs::path out = common.out;

  json results = json::array();
  std::string sequences_csv = io::csv_header(config) + "objective,n,sequence,objective_value,unique_letters,mean_contribution_per_letter\n";
  for (auto objective : objectives) {
    const SequenceSearcher searcher(objective, model, candidates, policy);
    json per_objective = json::array();
    std::string sweep_csv =
        io::csv_header(config) + "n,start,sequence,objective_value,unique_letters,mean_contribution_per_letter\n";
    for (int n : lengths) {
      const auto r = searcher.greedy(n);
      per_objective.push_back(io::search_result_json(r));
      std::string seq;
      for (const auto& w : r.sequence) seq += (seq.empty() ? "" : " ") + w.str();
      sequences_csv += std::string(to_string(objective)) + "," + std::to_string(n) + "," + seq + "," +
               io::fmt_double(r.objective_value) + "," + std::to_string(r.unique_letter_count()) + "," +
               io::fmt_double(per_letter_contribution(r)) + "\n";
      if (opts.sweep) {
        for (const auto& s : searcher.sweep(n)) {
          std::string sseq;
          for (const auto& w : s.sequence) sseq += (sseq.empty() ? "" : " ") + w.str();
          sweep_csv += std::to_string(n) + "," + s.sequence.front().str() + "," + sseq + "," +
                       io::fmt_double(s.objective_value) + "," + std::to_string(s.unique_letter_count()) + "," +
                       io::fmt_double(per_letter_contribution(s)) + "\n";
        }
      }
    }
    emit(out, "search_" + std::string(to_string(objective)) + ".json",
         io::dump(json{{"config", config}, {"results", per_objective}}));
    if (opts.sweep) emit(out, "sweep_" + std::string(to_string(objective)) + ".csv", sweep_csv);
    for (auto& r : per_objective) results.push_back(std::move(r));
  }

  std::string letters_csv = io::csv_header(config) + "word,unique_letters,green_probability\n";
  for (const auto& p : unique_letter_profile(candidates, model.raw)) {
    letters_csv += p.word.str() + "," + std::to_string(p.unique_letters) + "," + io::fmt_double(p.green_probability) + "\n";
  }
  emit(out, "unique_letters.csv", letters_csv);
  emit(out, "sequences.csv", sequences_csv);

  std::cout << json{{"config", config}, {"results", results}}.dump(2) << "\n";
  return 0;
}

std::string run_tag(StateMode mode, std::uint64_t seed) {
  return std::string(to_string(mode)) + "_seed" + std::to_string(seed);
}

int run_train(const CommonOptions& common, TrainOptions opts) {
  opts.hp.validate();
  const StateMode mode = require_mode(opts.mode);
  const PoolChoice pool = parse_pool(common.pool);
  if (opts.seeds.empty()) opts.seeds = {1};
  auto lists = std::make_shared<const WordLists>(io::load_word_lists_file(common.words));
  const auto env = Environment::make(lists, pool);

  // Runs are independent; files are written only once every run is done.
  std::vector<std::future<TrainResult>> jobs;
  for (auto seed : opts.seeds) {
    jobs.push_back(std::async(std::launch::async, [&env, hp = opts.hp, mode, seed] { return train(env, hp, mode, seed); }));
  }
  std::vector<TrainResult> results;
  for (auto& j : jobs) results.push_back(j.get());

  const fs::path out = common.out;
  json summary = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const auto seed = opts.seeds[i];
    const json config{{"command", "train"}, {"words", common.words},       {"pool", common.pool},
                      {"mode", opts.mode},  {"hyperparams", io::hyperparams_json(opts.hp)}, {"seed", seed}};
    const auto tag = run_tag(mode, seed);
    emit(out, "qtable_" + tag + ".json", io::dump(io::qtable_json(r.q, mode, config)));
    emit(out, "report_" + tag + ".json", io::dump(io::report_json(r.report, config)));
    emit(out, "rewards_" + tag + ".csv", io::reward_histogram_csv(r.report, config));
    emit(out, "lengths_" + tag + ".csv", io::game_lengths_csv(r.report, config));
    emit(out, "rolling_" + tag + ".csv", io::rolling_win_rate_csv(r.report, config));
    summary.push_back(json{{"seed", seed},
                           {"mode", opts.mode},
                           {"wins", r.report.wins},
                           {"win_rate", r.report.win_rate()},
                           {"wins_by_round", r.report.wins_by_round},
                           {"game_lengths", r.report.game_lengths}});
  }
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int run_policy(const CommonOptions& common, const std::vector<std::string>& runs) {
  if (runs.empty()) throw Error(ErrorCode::InvalidConfig, "--runs needs at least one Q-table file");
  std::vector<QTable> tables;
  std::optional<StateMode> mode;
  for (const auto& path : runs) {
    const json j = io::read_json_file(path);
    if (j.value("kind", std::string()) != "qtable") {
      throw Error(ErrorCode::InvalidConfig, "'" + path + "' is not a Q-table file");
    }
    const auto m = io::mode_from_json(j);
    if (mode && *mode != m) throw Error(ErrorCode::InvalidConfig, "runs mix 'last' and 'best' state encodings");
    mode = m;
    tables.push_back(io::qtable_from_json(j));
  }
  const auto pm = average_normalized_policy(tables, *mode);
  const json config{{"command", "policy"}, {"runs", runs}};
  const fs::path out = common.out;
  emit(out, "policy.json", io::dump(io::policy_json(pm, config)));
  emit(out, "policy_heatmap.csv", io::policy_heatmap_csv(pm, config));
  std::cout << io::policy_json(pm, config).dump(2) << "\n";
  return 0;
}

int run_evaluate(const CommonOptions& common, const EvaluateOptions& opts) {
  if (opts.policy.empty()) throw Error(ErrorCode::InvalidConfig, "--policy is required");
  const auto pm = io::policy_from_json(io::read_json_file(opts.policy));
  auto lists = std::make_shared<const WordLists>(io::load_word_lists_file(common.words));
  const auto env = Environment::make(lists, parse_pool(common.pool));
  const auto report = evaluate(env, io::policy_as_qtable(pm), pm.mode, opts.episodes, opts.seed);
  const json config{{"command", "evaluate"}, {"words", common.words}, {"pool", common.pool},
                    {"policy", opts.policy},  {"episodes", opts.episodes}, {"seed", opts.seed}};
  const json j = io::report_json(report, config);
  emit(common.out, "evaluation.json", io::dump(j));
  std::cout << json{{"config", config},
                    {"wins", report.wins},
                    {"win_rate", report.win_rate()},
                    {"wins_by_round", report.wins_by_round},
                    {"mean_reward", report.mean_reward}}
                   .dump(2)
            << "\n";
  return 0;
}

int run_serve(const CommonOptions& common, const ServeOptions& opts) {
  auto lists = std::make_shared<const WordLists>(io::load_word_lists_file(common.words));
  advisor::PolicyStore store(opts.allow_best);
  std::vector<std::string> specs = opts.policies;
  if (specs.empty()) specs.push_back(std::string("default=") + WORDLAB_DEFAULT_POLICY);
  std::string first;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    const std::string id = eq == std::string::npos ? "default" : spec.substr(0, eq);
    const std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
    store.add(id, io::policy_from_json(io::read_json_file(path)));
    if (first.empty()) first = id;
  }
  advisor::AdvisorOptions aopts;
  aopts.seed = opts.seed;
  aopts.top_k = opts.top_k;
  aopts.pool = parse_pool(common.pool);
  if (!opts.journal.empty()) aopts.journal_dir = opts.journal;
  advisor::AdvisorService service(lists, std::move(store), aopts);

  httplib::Server server;
  advisor::install_routes(server, service, first);
  std::cerr << "advisor listening on http://" << opts.host << ":" << opts.port << "\n";
  if (!server.listen(opts.host, opts.port)) {
    throw Error(ErrorCode::Io, "cannot listen on " + opts.host + ":" + std::to_string(opts.port));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wordlab: Wordle opener search and strategy learning"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option values; unknown keys are rejected");
  app.allow_config_extras(CLI::config_extras_mode::error);

  CommonOptions common;
  auto add_common = [&](CLI::App* sub, const std::string& default_pool) {
    common.pool = default_pool;
    sub->add_option("--words", common.words, "word list: one word per line, 2,315 answers first")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", common.out, "output directory");
  };
  auto add_pool = [&](CLI::App* sub) {
    sub->add_option("--pool", common.pool, "candidate pool: answers | all")->check(CLI::IsMember({"answers", "all"}));
  };

  auto* stats = app.add_subcommand("stats", "positional letter table and per-word scores");
  add_common(stats, "all");

  SearchOptions search_opts;
  auto* search = app.add_subcommand("search", "greedy opener sequences under both objectives");
  add_common(search, "all");
  add_pool(search);
  search->add_option("--objective", search_opts.objective, "tglp | ll | both")
      ->check(CLI::IsMember({"tglp", "ll", "both"}));
  search->add_option("--n", search_opts.n, "sequence length 1-5 (default: all)")->check(CLI::Range(1, 5));
  search->add_option("--ladder", search_opts.ladder, "overlap levels tried in order")->delimiter(',');
  search->add_flag("--allow-same-position", search_opts.allow_same_position,
                   "let a reused letter return to a position it already occupied");
  search->add_option("--overlap", search_opts.overlap, "multiset | distinct")
      ->check(CLI::IsMember({"multiset", "distinct"}));
  search->add_flag("--sweep", search_opts.sweep, "also run one greedy completion per starting word");

  TrainOptions train_opts;
  auto* train_cmd = app.add_subcommand("train", "tabular Q-learning runs, one per seed");
  add_common(train_cmd, "all");
  add_pool(train_cmd);
  train_cmd->add_option("--mode", train_opts.mode, "state encoding: last | best")->check(CLI::IsMember({"last", "best"}));
  train_cmd->add_option("--epsilon", train_opts.hp.epsilon, "exploration probability");
  train_cmd->add_option("--alpha", train_opts.hp.alpha, "learning rate");
  train_cmd->add_option("--discount", train_opts.hp.discount, "discount factor");
  train_cmd->add_option("--episodes", train_opts.hp.episodes, "games per run");
  train_cmd->add_option("--seed", train_opts.seeds, "seed (repeatable)");

  std::vector<std::string> runs;
  auto* policy = app.add_subcommand("policy", "average Q-tables into a row-normalized policy matrix");
  add_common(policy, "all");
  policy->add_option("--runs", runs, "Q-table JSON files")->required()->check(CLI::ExistingFile);

  EvaluateOptions eval_opts;
  auto* eval = app.add_subcommand("evaluate", "greedy play of a fixed policy without learning");
  add_common(eval, "all");
  add_pool(eval);
  eval->add_option("--policy", eval_opts.policy, "policy or Q-table JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--episodes", eval_opts.episodes, "games to play");
  eval->add_option("--seed", eval_opts.seed, "seed");

  ServeOptions serve_opts;
  auto* serve = app.add_subcommand("serve", "advisor HTTP service");
  add_common(serve, "answers");
  add_pool(serve);
  serve->add_option("--policy", serve_opts.policies, "policy file, optionally id=PATH (repeatable)");
  serve->add_option("--host", serve_opts.host, "bind address");
  serve->add_option("--port", serve_opts.port, "port")->check(CLI::Range(1, 65535));
  serve->add_option("--seed", serve_opts.seed, "fixed seed for session ids and picks");
  serve->add_option("--journal", serve_opts.journal, "directory for per-session JSON-lines journals");
  serve->add_option("--top", serve_opts.top_k, "number of top candidates returned");
  serve->add_flag("--allow-best", serve_opts.allow_best, "accept policies trained with the 'best' encoding");

  // Subcommand-specific pool defaults are set while options are declared; reset
  // to the chosen subcommand's default before parsing.
  stats->preparse_callback([&](std::size_t) { common.pool = "all"; });
  search->preparse_callback([&](std::size_t) { common.pool = "all"; });
  train_cmd->preparse_callback([&](std::size_t) { common.pool = "all"; });
  eval->preparse_callback([&](std::size_t) { common.pool = "all"; });
  serve->preparse_callback([&](std::size_t) { common.pool = "answers"; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (*stats) return run_stats(common);
    if (*search) return run_search(common, search_opts);
    if (*train_cmd) return run_train(common, train_opts);
    if (*policy) return run_policy(common, runs);
    if (*eval) return run_evaluate(common, eval_opts);
    if (*serve) return run_serve(common, serve_opts);
  } catch (const Error& e) {
    std::cerr << "wordlab: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidConfig ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "wordlab: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
