#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "kripkelab/checker.hpp"
#include "kripkelab/classes.hpp"
#include "kripkelab/combinatorics.hpp"
#include "kripkelab/error.hpp"
#include "kripkelab/experiment.hpp"
#include "kripkelab/lab.hpp"
#include "kripkelab/morphisms.hpp"
#include "kripkelab/parallel.hpp"
#include "kripkelab/samplers.hpp"

namespace kripkelab::cli {

namespace {

namespace fs = std::filesystem;

ClassId class_arg(const std::string& text) {
  auto c = parse_class_id(text);
  if (!c) throw InvalidInput("unknown class '" + text + "' (expected kd5, kd45, k5b, s5, gl3 or grz3)");
  return *c;
}

ClassScope scope_arg(bool connected) { return connected ? ClassScope::Connected : ClassScope::All; }

Frame load_frame(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read frame file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return frame_from_text(buf.str());
}

std::string format_set(const StateSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](State x) {
    if (!first) out += ", ";
    out += std::to_string(x);
    first = false;
  });
  return out + "}";
}

std::string format_map(const StateMap& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? " " : "") + std::to_string(m[i]);
  return out;
}

AsymptoticClaim claim_arg(const std::string& text, std::size_t r, std::size_t k) {
  using K = AsymptoticClaim::Kind;
  if (text == "bell_log") return {K::BellLog};
  if (text == "bell_ratio") return {K::BellRatio};
  if (text == "gnr_vs_bell") return {K::GnrVsBell, r, k};
  if (text == "central_binomial") return {K::CentralBinomial};
  throw InvalidInput("unknown claim '" + text + "' (expected bell_log, bell_ratio, gnr_vs_bell or central_binomial)");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counting, uniform sampling and Monte Carlo study of random Kripke frames"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(version()));
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: KRIPKELAB_THREADS, else all cores)");

  std::string cls;
  bool connected = false;
  std::size_t n = 0;
  std::vector<std::size_t> ns;
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  std::string formula_text;

  auto* count = app.add_subcommand("count", "Exact number of class members on [n]");
  count->add_option("--class", cls)->required();
  count->add_flag("--connected", connected);
  count->add_option("--n", n)->required()->check(CLI::PositiveNumber);

  auto* census = app.add_subcommand("census", "Closed-form counts next to brute-force enumeration");
  census->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  census->add_option("--class", cls);
  census->add_flag("--connected", connected, "Only the connected scope");
  bool no_brute = false;
  census->add_flag("--no-brute", no_brute, "Skip enumeration");

  auto* sample = app.add_subcommand("sample", "Uniformly sampled frames in the text format");
  std::size_t sample_count = 1;
  std::string out_dir;
  sample->add_option("--class", cls)->required();
  sample->add_flag("--connected", connected);
  sample->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  sample->add_option("--count", sample_count)->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed);
  sample->add_option("--out", out_dir, "Write frame_<i>.frame files into this directory");

  auto* check = app.add_subcommand("check", "Validity of a formula on a frame, or a p-morphism search");
  std::string frame_path;
  std::vector<std::string> pmorphism;
  check->add_option("--frame", frame_path);
  check->add_option("--formula", formula_text);
  check->add_option("--pmorphism", pmorphism, "Source and target frame files")->expected(2);

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo validity probability");
  estimate->add_option("--class", cls)->required();
  estimate->add_flag("--connected", connected);
  estimate->add_option("--formula", formula_text)->required();
  estimate->add_option("--n", ns)->required()->check(CLI::PositiveNumber);
  estimate->add_option("--trials", trials)->check(CLI::PositiveNumber);
  estimate->add_option("--seed", seed);

  auto* stats = app.add_subcommand("stats", "Frame statistic sweep");
  std::string stat_text;
  double threshold = 0;
  stats->add_option("--class", cls)->required();
  stats->add_flag("--connected", connected);
  stats->add_option("--stat", stat_text)->required();
  stats->add_option("--threshold", threshold);
  stats->add_option("--n", ns)->required()->check(CLI::PositiveNumber);
  stats->add_option("--trials", trials)->check(CLI::PositiveNumber);
  stats->add_option("--seed", seed);

  auto* uniformity = app.add_subcommand("uniformity", "Conditional uniformity of the largest component");
  uniformity->add_option("--class", cls)->required();
  uniformity->add_option("--n", n)->required()->check(CLI::Range(1, 5));
  uniformity->add_option("--trials", trials)->check(CLI::PositiveNumber);
  uniformity->add_option("--seed", seed);

  auto* asymptotic = app.add_subcommand("asymptotic", "Trend rows for an asymptotic statement");
  std::string claim_text;
  std::size_t upto = 0, claim_r = 3, claim_k = 9;
  asymptotic->add_option("--claim", claim_text)->required();
  asymptotic->add_option("--upto", upto)->required();
  asymptotic->add_option("--r", claim_r);
  asymptotic->add_option("--k", claim_k);

  auto* experiment = app.add_subcommand("experiment", "Run a JSON experiment config");
  std::string config_path;
  experiment->add_option("config", config_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*count) {
      out << count_class(class_arg(cls), scope_arg(connected), n) << "\n";
    } else if (*census) {
      std::vector<ClassId> classes(kAllClasses.begin(), kAllClasses.end());
      if (!cls.empty()) classes = {class_arg(cls)};
      const bool brute = !no_brute && n <= kMaxCensusStates;
      const std::size_t workers = resolve_threads(threads);
      out << "class,scope,n,count,brute,match\n";
      for (ClassId c : classes) {
        for (ClassScope s : kAllScopes) {
          if (connected && s != ClassScope::Connected) continue;
          const Count closed = count_class(c, s, n);
          out << to_string(c) << "," << to_string(s) << "," << n << "," << closed;
          if (brute) {
            const Count b = brute_census(n, [&](const Frame& f) { return in_class(c, s, f); }, workers);
            out << "," << b << "," << (b == closed ? "yes" : "no") << "\n";
          } else {
            out << ",,\n";
          }
        }
      }
    } else if (*sample) {
      const FrameSampler sampler(class_arg(cls), n);
      if (!out_dir.empty()) fs::create_directories(out_dir);
      for (std::size_t i = 0; i < sample_count; ++i) {
        RngStream rng = RngStream::substream(seed, i);
        const std::string text = to_text(sampler.sample(scope_arg(connected), rng));
        if (out_dir.empty()) {
          out << text;
        } else {
          const fs::path path = fs::path(out_dir) / ("frame_" + std::to_string(i) + ".frame");
          std::ofstream file(path, std::ios::binary);
          file << text;
          if (!file) throw Error("cannot write " + path.string());
          out << path.string() << "\n";
        }
      }
    } else if (*check) {
      if (!pmorphism.empty()) {
        if (!frame_path.empty() || !formula_text.empty())
          throw CLI::ValidationError("--pmorphism cannot be combined with --frame/--formula");
        const Frame f = load_frame(pmorphism[0]);
        const Frame g = load_frame(pmorphism[1]);
        const auto m = find_p_morphism(f, g);
        out << (m ? format_map(*m) : std::string("none")) << "\n";
      } else {
        if (frame_path.empty() || formula_text.empty())
          throw CLI::ValidationError("check needs --frame and --formula, or --pmorphism F G");
        const Frame f = load_frame(frame_path);
        const Formula phi = parse_formula(formula_text);
        const ValidityResult r = is_valid(f, phi);
        if (r.valid) {
          out << "valid\n";
        } else {
          out << "invalid\n";
          out << "state " << r.witness->state << "\n";
          for (const auto& [var, set] : r.witness->valuation) out << "p" << var << " = " << format_set(set) << "\n";
        }
      }
    } else if (*estimate) {
      const Formula phi = parse_formula(formula_text);
      const std::size_t workers = resolve_threads(threads);
      out << estimate_csv_header() << "\n";
      for (std::size_t size : ns)
        out << to_csv(estimate_validity(class_arg(cls), scope_arg(connected), phi, size, trials, seed, workers)) << "\n";
    } else if (*stats) {
      auto stat = parse_statistic(stat_text);
      if (!stat) throw InvalidInput("unknown statistic '" + stat_text + "'");
      out << sweep_csv_header() << "\n";
      for (const auto& row : stat_sweep(class_arg(cls), scope_arg(connected), *stat, ns, trials, seed, threshold,
                                        resolve_threads(threads)))
        out << to_csv(row) << "\n";
    } else if (*uniformity) {
      const auto report = conditional_uniformity_test(class_arg(cls), n, trials, seed, resolve_threads(threads));
      out << uniformity_csv_header() << "\n" << to_csv(report);
      out << (report.passed ? "pass" : "fail") << "\n";
    } else if (*asymptotic) {
      const auto report = asymptotic_report(claim_arg(claim_text, claim_r, claim_k), upto);
      out << "n," << report.claim << "\n";
      for (const auto& row : report.rows) out << row.n << "," << row.value.str(20) << "\n";
    } else if (*experiment) {
      const auto outcome = run_experiment(config_path, resolve_threads(threads));
      for (const auto& p : outcome.written) out << p.string() << "\n";
      out << outcome.manifest.string() << "\n";
      for (const auto& f : outcome.failures) err << "job " << f.index << " failed: " << f.message << "\n";
      if (!outcome.failures.empty()) return kDomainError;
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kOk;
}

}  // namespace kripkelab::cli
