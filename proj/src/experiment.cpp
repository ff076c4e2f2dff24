#include "kripkelab/experiment.hpp"

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "kripkelab/class_id.hpp"
#include "kripkelab/error.hpp"
#include "kripkelab/formula.hpp"
#include "kripkelab/lab.hpp"

#ifndef KRIPKELAB_VERSION
#define KRIPKELAB_VERSION "unknown"
#endif

namespace kripkelab {

const char* version() noexcept { return KRIPKELAB_VERSION; }

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

enum class JobKind { Estimate, Sweep, Uniformity };

struct Job {
  JobKind kind;
  ClassId class_id = ClassId::KD5;
  ClassScope scope = ClassScope::All;
  std::string formula;
  StatisticName stat{StatisticName::Kind::MaxComponentSize, 0};
  double threshold = 0;
  std::vector<std::size_t> ns;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  fs::path out;
  json raw;
};

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw InvalidInput("config error at " + path + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "." + key, "missing field");
  return *it;
}

std::string string_field(const json& obj, const std::string& key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string()) schema_error(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::uint64_t unsigned_field(const json& obj, const std::string& key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number_unsigned()) schema_error(path + "." + key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

Job parse_job(const json& j, const std::string& path, const fs::path& base) {
  if (!j.is_object()) schema_error(path, "expected an object");
  Job job;
  job.raw = j;
  const std::string kind = string_field(j, "kind", path);
  if (kind == "estimate")
    job.kind = JobKind::Estimate;
  else if (kind == "sweep")
    job.kind = JobKind::Sweep;
  else if (kind == "uniformity")
    job.kind = JobKind::Uniformity;
  else
    schema_error(path + ".kind", "unknown kind '" + kind + "'");

  const std::string cls = string_field(j, "class", path);
  auto c = parse_class_id(cls);
  if (!c) schema_error(path + ".class", "unknown class '" + cls + "'");
  job.class_id = *c;

  if (job.kind != JobKind::Uniformity || j.contains("scope")) {
    const std::string scope = string_field(j, "scope", path);
    auto s = parse_class_scope(scope);
    if (!s) schema_error(path + ".scope", "unknown scope '" + scope + "'");
    job.scope = *s;
  }
  if (job.kind == JobKind::Estimate) {
    job.formula = string_field(j, "formula", path);
    try {
      (void)parse_formula(job.formula);
    } catch (const ParseError& e) {
      schema_error(path + ".formula", e.what());
    }
  }
  if (job.kind == JobKind::Sweep) {
    const std::string stat = string_field(j, "stat", path);
    auto st = parse_statistic(stat);
    if (!st) schema_error(path + ".stat", "unknown statistic '" + stat + "'");
    job.stat = *st;
    if (auto it = j.find("threshold"); it != j.end()) {
      if (!it->is_number()) schema_error(path + ".threshold", "expected a number");
      job.threshold = it->get<double>();
    }
  }
  const json& ns = member(j, "ns", path);
  if (!ns.is_array() || ns.empty()) schema_error(path + ".ns", "expected a nonempty array");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!ns[i].is_number_unsigned() || ns[i].get<std::uint64_t>() == 0)
      schema_error(path + ".ns[" + std::to_string(i) + "]", "expected a positive integer");
    job.ns.push_back(ns[i].get<std::size_t>());
  }
  job.trials = unsigned_field(j, "trials", path);
  if (job.trials == 0) schema_error(path + ".trials", "must be positive");
  job.seed = unsigned_field(j, "seed", path);
  const std::string out = string_field(j, "out", path);
  if (out.empty()) schema_error(path + ".out", "empty path");
  job.out = fs::weakly_canonical(base / out);
  return job;
}

std::string run_job(const Job& job, std::size_t threads) {
  std::ostringstream csv;
  switch (job.kind) {
    case JobKind::Estimate: {
      const Formula phi = parse_formula(job.formula);
      csv << estimate_csv_header() << "\n";
      for (std::size_t n : job.ns)
        csv << to_csv(estimate_validity(job.class_id, job.scope, phi, n, job.trials, job.seed, threads)) << "\n";
      break;
    }
    case JobKind::Sweep:
      csv << sweep_csv_header() << "\n";
      for (const auto& row :
           stat_sweep(job.class_id, job.scope, job.stat, job.ns, job.trials, job.seed, job.threshold, threads))
        csv << to_csv(row) << "\n";
      break;
    case JobKind::Uniformity:
      csv << uniformity_csv_header() << "\n";
      for (std::size_t n : job.ns)
        csv << to_csv(conditional_uniformity_test(job.class_id, n, job.trials, job.seed, threads));
      break;
  }
  return csv.str();
}

void write_file(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out) throw Error("cannot write " + path.string());
}

ParseError json_syntax_error(const std::string& text, const json::parse_error& e) {
  std::size_t line = 1, column = 1;
  const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  std::string what = e.what();
  if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
  return ParseError("invalid experiment config: " + what, line, column);
}

}  // namespace

ExperimentOutcome run_experiment(const fs::path& config, std::size_t threads) {
  std::ifstream in(config, std::ios::binary);
  if (!in) throw InvalidInput("cannot read config " + config.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw json_syntax_error(text, e);
  }
  if (!root.is_object()) schema_error("$", "expected an object");
  const fs::path base = fs::absolute(config).parent_path();
  const json& jobs_json = member(root, "jobs", "$");
  if (!jobs_json.is_array()) schema_error("$.jobs", "expected an array");
  if (jobs_json.empty()) throw InvalidInput("no jobs");

  ExperimentOutcome outcome;
  outcome.manifest = fs::weakly_canonical(base / "manifest.json");
  if (auto it = root.find("manifest"); it != root.end()) {
    if (!it->is_string() || it->get<std::string>().empty()) schema_error("$.manifest", "expected a path");
    outcome.manifest = fs::weakly_canonical(base / it->get<std::string>());
  }

  std::vector<Job> jobs;
  std::set<fs::path> outs{outcome.manifest};
  for (std::size_t i = 0; i < jobs_json.size(); ++i) {
    const std::string path = "$.jobs[" + std::to_string(i) + "]";
    jobs.push_back(parse_job(jobs_json[i], path, base));
    if (!outs.insert(jobs.back().out).second)
      schema_error(path + ".out", "duplicate output path " + jobs.back().out.string());
  }

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  json manifest;
  manifest["version"] = version();
  manifest["config"] = fs::absolute(config).string();
  manifest["jobs"] = json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& job = jobs[i];
    json entry;
    entry["index"] = i;
    entry["inputs"] = job.raw;
    entry["seed"] = job.seed;
    entry["out"] = job.out.string();
    const auto job_start = Clock::now();
    try {
      write_file(job.out, run_job(job, threads));
      entry["status"] = "ok";
      outcome.written.push_back(job.out);
    } catch (const std::exception& e) {
      entry["status"] = "failed";
      entry["error"] = e.what();
      outcome.failures.push_back({i, e.what()});
    }
    entry["wall_seconds"] = std::chrono::duration<double>(Clock::now() - job_start).count();
    manifest["jobs"].push_back(std::move(entry));
  }
  manifest["wall_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  write_file(outcome.manifest, manifest.dump(2) + "\n");
  return outcome;
}

}  // namespace kripkelab
