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

// Synthetic judgment corpora with ground truth, and a brute-force oracle
// that recomputes every report directly from the truth.
//
// Randomness: each document draws from its own std::mt19937_64 stream
// seeded with SplitMix64(SplitMix64(seed) + index), and the shared citation
// pools from the stream for index 2^64-1. Integers are drawn by rejection
// sampling and probabilities from the top 53 bits, so output does not depend
// on the standard library's distribution implementations.

#ifndef MISL_TESTKIT_H_
#define MISL_TESTKIT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "misl/acquisition.h"
#include "misl/corpus_store.h"
#include "misl/date.h"
#include "misl/extraction.h"
#include "misl/normalization.h"
#include "misl/reporting.h"

namespace misl::testkit {

uint64_t SplitMix64(uint64_t x);

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  static Rng ForIndex(uint64_t seed, uint64_t index) {
    return Rng(SplitMix64(SplitMix64(seed) + index));
  }

  uint64_t Next() { return engine_(); }
  // Uniform in [0, n); n > 0.
  uint64_t Below(uint64_t n);
  // Uniform in [lo, hi].
  int Between(int lo, int hi);
  // Uniform in [0, 1) with 53 bits.
  double Unit();
  bool Chance(double p) { return Unit() < p; }
  template <typename T>
  const T &Pick(const std::vector<T> &v) {
    return v[Below(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

struct NoiseProfile {
  double judge_typo_rate = 0;     // per judge mention
  double title_variant_rate = 0;  // abbreviated type designators
  double date_missing_rate = 0;   // blank release dates

  // Throws Error(kInvalidProfile) unless every rate is in [0, 1].
  void Validate() const;
};

// A judge mention rendered with a single-character edit.
struct TypoMention {
  std::string judge_id;
  std::string mention;  // full line, honorifics included
  bool operator==(const TypoMention &) const = default;
};

// Annotation for one document. Field names follow DocFacts.
struct TruthEntry {
  DocId id;
  std::optional<Date> release_date;
  std::set<CaseType> types;
  bool suo_moto = false;
  Jurisdiction jurisdiction;
  std::vector<std::string> bench;  // judge ids in listing order
  std::set<ArticleRef> articles;
  std::set<PldCitation> pld;
  std::set<ScmrCitation> scmr;
  bool text_analyzed = true;
  std::vector<TypoMention> typos;
  int judge_mentions = 0;

  std::optional<int> year() const {
    return release_date ? std::optional<int>(release_date->year) : std::nullopt;
  }
  bool operator==(const TruthEntry &) const = default;
};

using GroundTruth = std::vector<TruthEntry>;

std::string TruthToJsonl(const GroundTruth &truth);
// Throws Error(kInvalidRecord) naming the line.
GroundTruth TruthFromJsonl(std::string_view data);

// 20 synthetic judges whose names are pairwise at least
// JudgeRoster::kMinSeparation edits apart.
const JudgeRoster &SyntheticRoster();

struct GeneratorOptions {
  uint64_t seed = 42;
  size_t n = 100;
  NoiseProfile noise;
  const JudgeRoster *roster = &SyntheticRoster();
  // Links are <link_base><id>.pdf.
  std::string link_base = "https://judgments.example.org/docs/";
};

struct SyntheticDoc {
  IndexRecord index;
  std::string text;
  TruthEntry truth;
};

struct SyntheticCorpus {
  std::vector<SyntheticDoc> docs;
  const JudgeRoster *roster = &SyntheticRoster();

  GroundTruth truth() const;
};

// Deterministic in (seed, n, noise, roster). Throws Error(kInvalidProfile).
SyntheticCorpus GenerateCorpus(const GeneratorOptions &options);

// Writes under `dir`:
//   manifest.jsonl, text/   corpus store with every document Converted
//   truth.jsonl             ground truth
//   index.csv               the index records
//   roster.csv              the judge roster used for generation
//   site/index.html         an index page linking site/docs/<id>.txt
//   site/docs/<id>.txt      document texts, for crawling via file:// URLs
void WriteCorpus(const SyntheticCorpus &corpus, const std::filesystem::path &dir);

// Full report bundle computed by direct enumeration of `truth`. Judges are
// named by their canonical names in `roster`.
ReportBundle OracleStats(const GroundTruth &truth, const JudgeRoster &roster,
                         const ReportOptions &options = {});

}  // namespace misl::testkit

#endif  // MISL_TESTKIT_H_
