#include "swarm/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include "swarm/csv.hpp"
#include "swarm/evaluate.hpp"
#include "swarm/parallel.hpp"
#include "swarm/replay.hpp"
#include "swarm/trainer.hpp"

namespace swarm {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot open '" + path.string() +
                             "' for writing");
  return out;
}

fs::path prepare_output_dir(const RunConfig& config) {
  fs::path dir(config.output_dir.empty() ? "." : config.output_dir);
  fs::create_directories(dir);
  return dir;
}

int guarded(const char* what, const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << what << ": error: " << e.what() << "\n";
    return 1;
  }
}

void write_summary_row(std::ostream& out, const std::string& label,
                       const RunConfig& config, const EvalSummary& s) {
  out << label << ',' << format_number(s.episodes) << ','
      << format_number(config.seed) << ',' << format_number(s.mean_reward)
      << ',' << format_number(s.std_reward) << ','
      << format_number(s.mean_steps) << ',' << format_number(s.detection_rate)
      << ',' << format_number(s.crash_rate) << "\n";
}

}  // namespace

int cmd_train(const RunConfig& config) {
  return guarded("train", [&] {
    config.validate();
    const fs::path dir = prepare_output_dir(config);

    std::vector<TrainingResult> results(static_cast<std::size_t>(config.runs));
    std::vector<std::uint64_t> run_seeds(static_cast<std::size_t>(config.runs));
    for (int r = 0; r < config.runs; ++r)
      run_seeds[r] = splitmix64(config.seed + static_cast<std::uint64_t>(r));

    parallel_for(config.runs, config.threads, [&](int r) {
      RunConfig run = config;
      run.seed = run_seeds[r];
      run.threads = 1;
      if (!config.checkpoint_out.empty() && config.runs > 1) {
        fs::path p(config.checkpoint_out);
        fs::path renamed = p.parent_path() /
                           (p.stem().string() + "_run" + std::to_string(r) +
                            p.extension().string());
        run.checkpoint_out = renamed.string();
      }
      results[r] = run_training(run);
    });

    for (int r = 0; r < config.runs; ++r) {
      auto out = open_output(dir / ("metrics_run" + std::to_string(r) + ".csv"));
      write_metrics_header(out);
      for (const auto& m : results[r].metrics)
        write_metrics_row(out, MetricsRow{r, run_seeds[r], m});
    }

    // Per-episode mean/std across runs.
    auto agg = open_output(dir / "metrics_aggregate.csv");
    agg << "episode,mean_reward,std_reward\n";
    for (int e = 0; e < config.episodes; ++e) {
      double sum = 0.0;
      for (const auto& res : results) sum += res.metrics[e].team_reward;
      const double mean = sum / config.runs;
      double sq = 0.0;
      for (const auto& res : results) {
        const double d = res.metrics[e].team_reward - mean;
        sq += d * d;
      }
      agg << format_number(e) << ',' << format_number(mean) << ','
          << format_number(std::sqrt(sq / config.runs)) << "\n";
    }
  });
}

int cmd_eval(const RunConfig& config, const std::string& policy_name) {
  return guarded("eval", [&] {
    config.validate();
    const PolicyKind kind = parse_policy_kind(policy_name);
    const fs::path dir = prepare_output_dir(config);

    std::vector<AgentNets> nets;
    if (kind == PolicyKind::Learned) {
      if (config.checkpoint_in.empty())
        throw std::runtime_error("learned policy requires checkpoint_in");
      nets = load_checkpoint(config.checkpoint_in);
    }

    std::vector<EpisodeMetrics> per_episode;
    const EvalSummary summary = evaluate(
        config.world, kind, nets.empty() ? nullptr : &nets,
        config.eval_episodes, config.seed, config.threads, config.eval_argmax,
        &per_episode);

    const std::string label = policy_kind_name(kind);
    auto out = open_output(dir / ("eval_" + label + ".csv"));
    out << "policy,episodes,seed,mean_reward,std_reward,mean_steps,"
           "detection_rate,crash_rate\n";
    write_summary_row(out, label, config, summary);

    auto rows = open_output(dir / ("eval_" + label + "_episodes.csv"));
    rows << "episode,team_reward,length,detections,crashes\n";
    for (const auto& m : per_episode)
      rows << format_number(m.episode) << ',' << format_number(m.team_reward)
           << ',' << format_number(m.length) << ','
           << format_number(m.detections) << ',' << format_number(m.crashes)
           << "\n";
  });
}

int cmd_sweep(const RunConfig& config, const std::string& kind,
              std::span<const int> values) {
  return guarded("sweep", [&] {
    config.validate();
    SweepResult result;
    std::string value_column;
    if (kind == "team-size") {
      result = sweep_team_size(config, values);
      value_column = "n_drones";
    } else if (kind == "target-count") {
      result = sweep_target_count(config, values);
      value_column = "n_targets";
    } else {
      throw std::invalid_argument("unknown sweep kind '" + kind +
                                  "' (expected team-size or target-count)");
    }

    const fs::path dir = prepare_output_dir(config);
    auto out = open_output(dir / ("sweep_" + kind + ".csv"));
    out << value_column
        << ",train_episodes,eval_episodes,mean_reward,std_reward,mean_steps,"
           "detection_rate,crash_rate,fit_slope,fit_intercept,fit_r2\n";
    for (const auto& p : result.points) {
      out << format_number(p.value) << ',' << format_number(config.episodes)
          << ',' << format_number(p.summary.episodes) << ','
          << format_number(p.summary.mean_reward) << ','
          << format_number(p.summary.std_reward) << ','
          << format_number(p.summary.mean_steps) << ','
          << format_number(p.summary.detection_rate) << ','
          << format_number(p.summary.crash_rate) << ','
          << format_number(result.fit.slope) << ','
          << format_number(result.fit.intercept) << ','
          << format_number(result.fit.r2) << "\n";
    }
  });
}

int cmd_replay(const RunConfig& config, const std::string& out_path) {
  return guarded("replay", [&] {
    config.validate();
    if (config.checkpoint_in.empty())
      throw std::runtime_error("replay requires checkpoint_in");
    const std::vector<AgentNets> nets = load_checkpoint(config.checkpoint_in);
    if (static_cast<int>(nets.size()) != config.world.n_drones)
      throw std::runtime_error(
          "replay: checkpoint agent count does not match n_drones");

    Rng rng = make_stream(config.seed, 0);
    World world(config.world, rng());
    LearnedPolicy policy(&nets, config.eval_argmax);
    EpisodeLog log;
    run_episode(world, policy, rng, &log);

    const fs::path dir = prepare_output_dir(config);
    const fs::path path =
        out_path.empty() ? dir / "replay.csv" : fs::path(out_path);
    write_replay_file(path.string(), log);
  });
}

}  // namespace swarm
