// Copyright 2026 The misl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver for the judgment mining pipeline.
//
//   misl [--config FILE] [--root DIR] [--jobs N] [--split-year Y]
//        [--top-k K] [--strict] <crawl|fetch|convert|analyze|report|all>
//   misl fixture-gen --out DIR [--seed S] [--n N] [--typo-rate P] ...
//
// Exit status: 0 on success, 1 when per-document failures exceed the
// configured failure rate, 2 on any other error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "misl/error.h"
#include "misl/pipeline.h"
#include "misl/testkit.h"

namespace {

struct GlobalFlags {
  std::string config;
  std::string root;
  size_t jobs = 0;
  int split_year = 0;
  size_t top_k = 0;
  bool strict = false;
};

misl::RunConfig BuildConfig(const GlobalFlags &flags) {
  std::optional<std::filesystem::path> file;
  if (!flags.config.empty()) file = flags.config;
  misl::RunConfig config = misl::RunConfig::Load(file);
  if (!flags.root.empty()) config.root = flags.root;
  if (flags.jobs > 0) config.jobs = flags.jobs;
  if (flags.split_year != 0) config.report.split_year = flags.split_year;
  if (flags.top_k > 0) config.report.top_k = flags.top_k;
  if (flags.strict) config.max_failure_rate = 0;
  config.Validate();
  return config;
}

int FunnelStatus(const misl::RunConfig &config, const misl::Funnel &funnel) {
  if (funnel.FailureRate() > config.max_failure_rate) {
    std::cerr << fmt::format("failure rate {:.3f} exceeds the threshold {:.3f}\n",
                             funnel.FailureRate(), config.max_failure_rate);
    return 1;
  }
  return 0;
}

int RunStage(const std::string &stage, const GlobalFlags &flags) {
  misl::RunConfig config = BuildConfig(flags);
  misl::Pipeline pipeline(config, nullptr, &std::cerr);
  if (stage == "crawl") {
    pipeline.Crawl();
  } else if (stage == "fetch" || stage == "convert") {
    misl::StageResult r = stage == "fetch" ? pipeline.Fetch() : pipeline.Convert();
    std::cout << r.funnel.ToString() << '\n';
  } else if (stage == "analyze") {
    pipeline.Analyze();
  } else if (stage == "report") {
    pipeline.Report();
  } else {
    pipeline.All();
    std::cout << pipeline.CurrentFunnel().ToString() << '\n';
  }
  return FunnelStatus(config, pipeline.CurrentFunnel());
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Mine Supreme Court judgments into summary reports."};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags flags;
  app.add_option("--config", flags.config, "key = value configuration file");
  app.add_option("--root", flags.root, "corpus root directory");
  app.add_option("--jobs", flags.jobs, "parallel workers per stage")->check(CLI::PositiveNumber);
  app.add_option("--split-year", flags.split_year, "first year of the later period");
  app.add_option("--top-k", flags.top_k, "rows in ranked tables")->check(CLI::PositiveNumber);
  app.add_flag("--strict", flags.strict, "fail on any dead link or conversion failure");

  std::string stage;
  const std::pair<const char *, const char *> kStages[] = {
      {"crawl", "read the index into index.csv and the manifest"},
      {"fetch", "download documents that are still indexed"},
      {"convert", "convert downloaded documents to text"},
      {"analyze", "extract facts and aggregate statistics"},
      {"report", "write the report tables"},
      {"all", "run every stage in order"},
  };
  for (const auto &[name, help] : kStages) {
    app.add_subcommand(name, help)->callback([&stage, n = name] { stage = n; });
  }

  misl::testkit::GeneratorOptions gen;
  std::string out;
  auto *fixture = app.add_subcommand("fixture-gen", "write a synthetic corpus with ground truth");
  fixture->add_option("--out", out, "output directory")->required();
  fixture->add_option("--seed", gen.seed, "generator seed");
  fixture->add_option("--n", gen.n, "number of documents");
  fixture->add_option("--typo-rate", gen.noise.judge_typo_rate, "judge typo rate");
  fixture->add_option("--title-variant-rate", gen.noise.title_variant_rate,
                      "abbreviated title rate");
  fixture->add_option("--date-missing-rate", gen.noise.date_missing_rate, "blank date rate");
  fixture->add_option("--link-base", gen.link_base, "prefix for document links");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fixture->parsed()) {
      misl::testkit::WriteCorpus(misl::testkit::GenerateCorpus(gen), out);
      std::cout << fmt::format("wrote {} documents to {}\n", gen.n, out);
      return 0;
    }
    return RunStage(stage, flags);
  } catch (const misl::Error &e) {
    std::cerr << fmt::format("error ({}): {}\n", misl::ErrorCodeName(e.code()), e.what());
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}
