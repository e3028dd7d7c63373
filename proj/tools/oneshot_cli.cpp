// Command-line front end: exact regret formulas, Monte Carlo validation
// experiments, and rule-comparison benchmarks with CSV/SVG output.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oneshot/harness.hpp"
#include "oneshot/hull.hpp"
#include "oneshot/objectives.hpp"
#include "oneshot/report.hpp"
#include "oneshot/selection.hpp"
#include "oneshot/theory.hpp"

namespace {

namespace fs = std::filesystem;
using oneshot::harness::ExperimentConfig;
using oneshot::harness::ExperimentKind;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(text.substr(pos));
      break;
    }
    out.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

std::size_t parse_count(const std::string& token, const char* what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw std::invalid_argument(std::string(what) + ": malformed integer '" + token + "'");
  }
  return value;
}

// Grid syntax: comma-separated tokens, each either an integer or an
// inclusive range a:b:step.
std::vector<std::size_t> parse_grid(const std::string& text, const char* what) {
  std::vector<std::size_t> out;
  for (const std::string& token : split(text, ',')) {
    if (token.empty()) {
      throw std::invalid_argument(std::string(what) + ": empty grid token");
    }
    if (token.find(':') == std::string::npos) {
      out.push_back(parse_count(token, what));
      continue;
    }
    const std::vector<std::string> parts = split(token, ':');
    if (parts.size() != 3) {
      throw std::invalid_argument(std::string(what) + ": range token must be a:b:step, got '" +
                                  token + "'");
    }
    const std::size_t a = parse_count(parts[0], what);
    const std::size_t b = parse_count(parts[1], what);
    const std::size_t step = parse_count(parts[2], what);
    if (step == 0 || a > b) {
      throw std::invalid_argument(std::string(what) + ": range '" + token +
                                  "' needs a <= b and step >= 1");
    }
    for (std::size_t v = a; v <= b; v += step) {
      out.push_back(v);
      if (v > b - step) break;  // guard overflow of v += step
    }
  }
  if (out.empty()) {
    throw std::invalid_argument(std::string(what) + ": grid is empty");
  }
  return out;
}

std::vector<oneshot::selection::MuRule> parse_rules(const std::string& text) {
  std::vector<oneshot::selection::MuRule> rules;
  for (const std::string& token : split(text, ',')) {
    rules.push_back(oneshot::selection::MuRule::parse(token));
  }
  return rules;
}

oneshot::objectives::TranslationScale parse_translation_scale(const std::string& name) {
  if (name == "variance") return oneshot::objectives::TranslationScale::variance;
  if (name == "stddev") return oneshot::objectives::TranslationScale::stddev;
  throw std::invalid_argument("translation-scale must be 'variance' or 'stddev'");
}

fs::path prepare_out_dir(const std::string& dir) {
  const fs::path out(dir);
  fs::create_directories(out);
  return out;
}

struct TheoryArgs {
  std::size_t d = 1;
  std::size_t lambda = 2;
  std::vector<std::uint64_t> mus;
  double r = 1.0;
  double epsilon = 0.0;
  bool epsilon_given = false;
};

void run_theory(const TheoryArgs& args) {
  for (std::uint64_t mu : args.mus) {
    oneshot::theory::TheoryParams p;
    p.d = args.d;
    p.lambda = args.lambda;
    p.mu = static_cast<std::size_t>(mu);
    p.r = args.r;
    p.epsilon = args.epsilon_given ? args.epsilon : 0.0;

    nlohmann::ordered_json record;
    record["d"] = p.d;
    record["lambda"] = p.lambda;
    record["mu"] = p.mu;
    record["r"] = p.r;
    record["regret_centered"] = oneshot::theory::regret_mu_avg_centered(p);
    if (args.epsilon_given) {
      const auto bounds = oneshot::theory::regret_bounds_noncentered(p);
      record["epsilon"] = p.epsilon;
      record["lower"] = bounds.lower;
      record["upper"] = bounds.upper;
    }
    std::cout << record.dump() << '\n';
  }
}

struct ValidateArgs {
  std::size_t d = 1;
  std::size_t lambda = 2;
  double r = 1.0;
  double epsilon = 1.0 / 3.0;
  std::size_t reps = 0;
  std::string mu_grid;
  std::uint64_t seed = 1;
  std::string out;
  std::size_t threads = 0;
};

ExperimentConfig validation_config(const ValidateArgs& args, ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.d = args.d;
  cfg.lambdas = {args.lambda};
  cfg.mu_grid = parse_grid(args.mu_grid, "mu-grid");
  cfg.r = args.r;
  cfg.epsilon = args.epsilon;
  cfg.reps = args.reps;
  cfg.master_seed = args.seed;
  cfg.threads = args.threads;
  cfg.validate();
  return cfg;
}

void run_validate_centered(const ValidateArgs& args) {
  const ExperimentConfig cfg = validation_config(args, ExperimentKind::centered_validation);
  const auto result = oneshot::harness::run_validation_centered(cfg);

  const fs::path out = prepare_out_dir(args.out);
  const std::vector<oneshot::report::CurveSeries> series{result.empirical, result.theory};
  const fs::path csv = out / "validate_centered.csv";
  const fs::path svg = out / "validate_centered.svg";
  oneshot::report::write_csv(series, csv);
  oneshot::report::render_svg(series,
                              {true, true, "mu", "mean regret (band: +/- stderr)",
                               "Centered sphere: empirical vs exact"},
                              svg);
  std::cout << "wrote " << csv.string() << '\n' << "wrote " << svg.string() << '\n';
}

void run_validate_noncentered(const ValidateArgs& args) {
  const ExperimentConfig cfg = validation_config(args, ExperimentKind::noncentered_validation);
  const auto result = oneshot::harness::run_validation_noncentered(cfg);

  const fs::path out = prepare_out_dir(args.out);
  const std::vector<oneshot::report::CurveSeries> series{result.empirical, result.lower,
                                                         result.upper};
  const fs::path csv = out / "validate_noncentered.csv";
  const fs::path svg = out / "validate_noncentered.svg";
  oneshot::report::write_csv(series, csv);
  oneshot::report::render_svg(series,
                              {true, true, "mu", "mean regret (band: +/- stderr)",
                               "Off-center sphere: empirical vs bounds"},
                              svg);
  std::cout << "argmin_mu=" << result.argmin_mu << '\n';
  std::cout << "wrote " << csv.string() << '\n' << "wrote " << svg.string() << '\n';
}

struct BenchArgs {
  std::string objective = "sphere";
  std::size_t d = 1;
  std::string lambdas = "16,64,256,1024,4096";
  std::string rules = "best,avg,eavg,hchavg,teavg,thchavg";
  std::size_t reps = 100;
  double scale = 1.0;
  std::string translation_scale = "variance";
  std::uint64_t seed = 1;
  std::string out;
  std::size_t threads = 0;
  bool print_h = false;
};

void run_bench(const BenchArgs& args) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::rule_comparison;
  cfg.d = args.d;
  cfg.lambdas = parse_grid(args.lambdas, "lambdas");
  cfg.rules = parse_rules(args.rules);
  cfg.gaussian_scale = args.scale;
  cfg.objective = oneshot::objectives::parse_kind(args.objective);
  cfg.translation_scale = parse_translation_scale(args.translation_scale);
  cfg.reps = args.reps;
  cfg.master_seed = args.seed;
  cfg.threads = args.threads;
  cfg.validate();

  const auto result = oneshot::harness::run_rule_comparison(cfg);

  const fs::path out = prepare_out_dir(args.out);
  const fs::path csv = out / ("bench_" + args.objective + ".csv");
  const fs::path svg = out / ("bench_" + args.objective + ".svg");
  oneshot::report::write_csv(result.series, csv);
  oneshot::report::render_svg(result.series,
                              {true, true, "lambda", "mean regret (band: +/- stderr)",
                               "Rule comparison on " + args.objective},
                              svg);
  if (args.print_h) {
    for (const auto& stats : result.hull_stats) {
      std::cout << "h: lambda=" << stats.lambda << " mean=" << stats.mean_h
                << " min=" << stats.min_h << " max=" << stats.max_h << '\n';
    }
  }
  std::cout << "wrote " << csv.string() << '\n' << "wrote " << svg.string() << '\n';
}

struct MuArgs {
  std::string rule;
  std::size_t lambda = 2;
  std::size_t d = 1;
  std::optional<std::size_t> h;
};

void run_mu(const MuArgs& args) {
  const auto rule = oneshot::selection::MuRule::parse(args.rule);
  std::cout << oneshot::selection::compute_mu(rule, args.lambda, args.d, args.h) << '\n';
}

std::string trim(const std::string& text) {
  const std::size_t first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const std::size_t last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

// A config file supplies defaults for any long flag as key=value lines
// (blank lines and #/; comments allowed).  Explicit command-line flags win:
// a key already present in args is left alone, everything else is appended
// as --key=value before parsing.
void apply_config_defaults(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) return;  // parser reports the missing value
      path = args[i + 1];
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      break;
    }
  }
  if (path.empty()) return;

  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open file '" + path + "'");
  }
  const auto flag_given = [&args](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&flag](const std::string& arg) {
      return arg == flag || arg.rfind(flag + "=", 0) == 0;
    });
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("config: line " + std::to_string(line_no) + " of '" + path +
                                  "' is not key=value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) {
      throw std::invalid_argument("config: line " + std::to_string(line_no) + " of '" + path +
                                  "' has an empty key");
    }
    if (key == "config") continue;
    const std::string flag = "--" + key;
    if (!flag_given(flag)) {
      args.push_back(flag + "=" + value);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-shot optimization: mu-best averaging, exact regret formulas, "
               "Monte Carlo validation, and rule benchmarks"};
  app.require_subcommand(1);

  std::string config_path;
  constexpr const char* kConfigHelp =
      "Key=value file supplying defaults for any flag; explicit flags override it";

  TheoryArgs theory_args;
  CLI::App* theory = app.add_subcommand("theory", "Print exact regret values as JSON lines");
  theory->add_option("--config", config_path, kConfigHelp);
  theory->add_option("--d", theory_args.d, "Dimension")->required();
  theory->add_option("--lambda", theory_args.lambda, "Batch size")->required();
  theory->add_option("--mu", theory_args.mus, "Selection size(s), comma separated")
      ->required()
      ->delimiter(',');
  theory->add_option("--r", theory_args.r, "Sampling radius")->capture_default_str();
  CLI::Option* eps_opt =
      theory->add_option("--epsilon", theory_args.epsilon, "Offset ||y||/r in [0,1)");
  theory->callback([&] {
    theory_args.epsilon_given = eps_opt->count() > 0;
    run_theory(theory_args);
  });

  ValidateArgs centered_args;
  centered_args.reps = 1000;
  CLI::App* centered = app.add_subcommand(
      "validate-centered", "Monte Carlo vs exact regret, optimum at the ball center");
  centered->add_option("--config", config_path, kConfigHelp);
  centered->add_option("--d", centered_args.d, "Dimension")->required();
  centered->add_option("--lambda", centered_args.lambda, "Batch size")->required();
  centered->add_option("--r", centered_args.r, "Sampling radius")->capture_default_str();
  centered->add_option("--reps", centered_args.reps, "Repetitions")->capture_default_str();
  centered->add_option("--mu-grid", centered_args.mu_grid, "Mu grid: a:b:step and/or comma list")
      ->required();
  centered->add_option("--seed", centered_args.seed, "Master seed")->capture_default_str();
  centered->add_option("--out", centered_args.out, "Output directory")->required();
  centered->add_option("--threads", centered_args.threads, "Worker threads (0 = auto)")->capture_default_str();
  centered->callback([&] { run_validate_centered(centered_args); });

  ValidateArgs noncentered_args;
  noncentered_args.reps = 10000;
  CLI::App* noncentered = app.add_subcommand(
      "validate-noncentered", "Monte Carlo vs regret bounds, optimum off center");
  noncentered->add_option("--config", config_path, kConfigHelp);
  noncentered->add_option("--d", noncentered_args.d, "Dimension")->required();
  noncentered->add_option("--lambda", noncentered_args.lambda, "Batch size")->required();
  noncentered->add_option("--r", noncentered_args.r, "Sampling radius")->capture_default_str();
  noncentered->add_option("--epsilon", noncentered_args.epsilon, "Offset ||y||/r in [0,1)")
      ->required();
  noncentered->add_option("--reps", noncentered_args.reps, "Repetitions")->capture_default_str();
  noncentered
      ->add_option("--mu-grid", noncentered_args.mu_grid, "Mu grid: a:b:step and/or comma list")
      ->required();
  noncentered->add_option("--seed", noncentered_args.seed, "Master seed")->capture_default_str();
  noncentered->add_option("--out", noncentered_args.out, "Output directory")->required();
  noncentered->add_option("--threads", noncentered_args.threads, "Worker threads (0 = auto)")
      ->capture_default_str();
  noncentered->callback([&] { run_validate_noncentered(noncentered_args); });

  BenchArgs bench_args;
  CLI::App* bench =
      app.add_subcommand("bench", "Compare selection rules on a translated objective");
  bench->add_option("--config", config_path, kConfigHelp);
  bench->add_option("--objective", bench_args.objective, "sphere|cigar|hm|rastrigin")
      ->required();
  bench->add_option("--d", bench_args.d, "Dimension")->required();
  bench->add_option("--lambdas", bench_args.lambdas, "Batch sizes, comma list")->capture_default_str();
  bench->add_option("--rules", bench_args.rules,
                    "Rules: best,avg,eavg,hchavg,teavg,thchavg,ratio:<c>,fixed:<m>")->capture_default_str();
  bench->add_option("--reps", bench_args.reps, "Repetitions per lambda")->capture_default_str();
  bench->add_option("--scale", bench_args.scale, "Gaussian sampling scale")->capture_default_str();
  bench->add_option("--translation-scale", bench_args.translation_scale,
                    "Read 0.2 as 'variance' or 'stddev'")->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "Master seed")->capture_default_str();
  bench->add_option("--out", bench_args.out, "Output directory")->required();
  bench->add_option("--threads", bench_args.threads, "Worker threads (0 = auto)")->capture_default_str();
  bench->add_flag("--print-h", bench_args.print_h, "Print hull-prefix statistics per lambda");
  bench->callback([&] { run_bench(bench_args); });

  MuArgs mu_args;
  CLI::App* mu = app.add_subcommand("mu", "Print the selection size of a rule");
  mu->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  mu->add_option("--config", config_path, kConfigHelp);
  mu->add_option("--rule", mu_args.rule, "Rule name")->required();
  mu->add_option("--lambda", mu_args.lambda, "Batch size")->required();
  mu->add_option("--d", mu_args.d, "Dimension")->required();
  std::size_t h_value = 0;
  CLI::Option* h_opt = mu->add_option("--h", h_value, "Hull prefix statistic");
  mu->callback([&] {
    if (h_opt->count() > 0) mu_args.h = h_value;
    run_mu(mu_args);
  });

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    apply_config_defaults(args);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
