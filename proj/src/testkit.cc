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

#include "misl/testkit.h"

#include <algorithm>
#include <limits>
#include <map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "misl/config.h"
#include "misl/csv.h"
#include "misl/error.h"
#include "misl/text.h"

namespace misl::testkit {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

uint64_t Rng::Below(uint64_t n) {
  // Rejection sampling keeps every residue equally likely.
  uint64_t limit = std::numeric_limits<uint64_t>::max() -
                   std::numeric_limits<uint64_t>::max() % n;
  uint64_t x;
  do {
    x = Next();
  } while (x >= limit);
  return x % n;
}

int Rng::Between(int lo, int hi) {
  return lo + static_cast<int>(Below(static_cast<uint64_t>(hi - lo) + 1));
}

double Rng::Unit() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

void NoiseProfile::Validate() const {
  auto check = [](double rate, std::string_view name) {
    if (!(rate >= 0 && rate <= 1)) {
      throw Error(ErrorCode::kInvalidProfile,
                  fmt::format("{} must be in [0, 1], got {}", name, rate));
    }
  };
  check(judge_typo_rate, "judge_typo_rate");
  check(title_variant_rate, "title_variant_rate");
  check(date_missing_rate, "date_missing_rate");
}

const JudgeRoster &SyntheticRoster() {
  static const JudgeRoster kRoster = [] {
    static constexpr std::string_view kNames[] = {
        "Aamir Farooq Baloch",   "Bilal Hassan Qureshi", "Danish Rauf Siddiqui",
        "Ehsan Karim Malik",     "Faisal Mehmood Rana",  "Ghulam Rasool Tarar",
        "Haroon Aslam Bhatti",   "Imran Yousaf Khattak", "Junaid Zafar Abbasi",
        "Kamran Saleem Gondal",  "Luqman Ashraf Niazi",  "Mansoor Ilyas Sheikh",
        "Naveed Iqbal Warraich", "Omer Shafiq Durrani",  "Pervaiz Anwar Cheema",
        "Qasim Sohail Mirza",    "Rehan Tahir Awan",     "Sajjad Waqar Kiyani",
        "Tanveer Babar Lodhi",   "Usman Nadeem Hashmi",
    };
    std::vector<Judge> judges;
    for (size_t i = 0; i < std::size(kNames); ++i) {
      judges.push_back(Judge{fmt::format("S{:02d}", i + 1), std::string(kNames[i]), {}});
    }
    return JudgeRoster(std::move(judges));
  }();
  return kRoster;
}

// --- Truth JSONL -----------------------------------------------------------------

namespace {

json TruthToJson(const TruthEntry &t) {
  json j;
  j["id"] = t.id.value();
  j["release_date"] = t.release_date ? json(t.release_date->ToIso()) : json(nullptr);
  j["year"] = t.year() ? json(*t.year()) : json(nullptr);
  j["types"] = json::array();
  for (CaseType c : t.types) j["types"].push_back(std::string(CaseTypeName(c)));
  j["suo_moto"] = t.suo_moto;
  j["text_analyzed"] = t.text_analyzed;
  j["jurisdiction"] = t.jurisdiction.Label();
  j["bench"] = t.bench;
  j["articles"] = json::array();
  for (const auto &r : t.articles) j["articles"].push_back(r.Render());
  j["pld"] = json::array();
  for (const auto &c : t.pld) j["pld"].push_back(c.Render());
  j["scmr"] = json::array();
  for (const auto &c : t.scmr) j["scmr"].push_back(c.Render());
  j["judge_mentions"] = t.judge_mentions;
  j["typos"] = json::array();
  for (const auto &m : t.typos) {
    j["typos"].push_back({{"judge_id", m.judge_id}, {"mention", m.mention}});
  }
  return j;
}

TruthEntry TruthFromJson(const json &j) {
  auto fail = [](const std::string &why) { return Error(ErrorCode::kInvalidRecord, why); };
  TruthEntry t;
  t.id = DocId(j.at("id").get<std::string>());
  if (!j.at("release_date").is_null()) {
    t.release_date = Date::ParseIso(j.at("release_date").get<std::string>());
    if (!t.release_date) throw fail("bad release_date");
  }
  for (const auto &name : j.at("types")) {
    auto c = ParseCaseTypeName(name.get<std::string>());
    if (!c) throw fail("unknown case type");
    t.types.insert(*c);
  }
  t.suo_moto = j.at("suo_moto").get<bool>();
  t.text_analyzed = j.value("text_analyzed", true);
  auto jurisdiction = Jurisdiction::FromLabel(j.at("jurisdiction").get<std::string>());
  if (!jurisdiction) throw fail("bad jurisdiction");
  t.jurisdiction = *jurisdiction;
  t.bench = j.at("bench").get<std::vector<std::string>>();
  for (const auto &s : j.at("articles")) {
    auto r = ArticleRef::Parse(s.get<std::string>());
    if (!r) throw fail("bad article");
    t.articles.insert(*r);
  }
  for (const auto &s : j.at("pld")) {
    auto c = ParsePldCitation(s.get<std::string>());
    if (!c) throw fail("bad PLD citation");
    t.pld.insert(*c);
  }
  for (const auto &s : j.at("scmr")) {
    auto c = ParseScmrCitation(s.get<std::string>());
    if (!c) throw fail("bad SCMR citation");
    t.scmr.insert(*c);
  }
  t.judge_mentions = j.value("judge_mentions", static_cast<int>(t.bench.size()));
  if (j.contains("typos")) {
    for (const auto &m : j.at("typos")) {
      t.typos.push_back(
          TypoMention{m.at("judge_id").get<std::string>(), m.at("mention").get<std::string>()});
    }
  }
  return t;
}

}  // namespace

std::string TruthToJsonl(const GroundTruth &truth) {
  std::string out;
  for (const auto &t : truth) out += TruthToJson(t).dump() + "\n";
  return out;
}

GroundTruth TruthFromJsonl(std::string_view data) {
  GroundTruth out;
  int line_no = 0;
  for (std::string_view line : text::Lines(data)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    try {
      out.push_back(TruthFromJson(json::parse(line)));
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kInvalidRecord, e.what(), line_no);
    } catch (const Error &e) {
      throw Error(ErrorCode::kInvalidRecord, e.what(), line_no);
    }
  }
  return out;
}

GroundTruth SyntheticCorpus::truth() const {
  GroundTruth out;
  out.reserve(docs.size());
  for (const auto &d : docs) out.push_back(d.truth);
  return out;
}

// --- Generation -----------------------------------------------------------------

namespace {

struct Designator {
  CaseType type;
  std::string_view long_form;
  std::string_view short_form;  // must resolve unambiguously
  int weight_pre;               // relative frequency before 2009
  int weight_post;              // and from 2009 on
};

constexpr Designator kDesignators[] = {
    {CaseType::kConstitution, "Constitution Petition", "Const.P.", 12, 18},
    {CaseType::kCivilMiscApplication, "Civil Miscellaneous Application", "C.M.A.", 8, 10},
    {CaseType::kSuoMoto, "Suo Moto Case", "S.M.C.", 2, 6},
    {CaseType::kHumanRights, "Human Rights Case", "H.R.C.", 3, 5},
    {CaseType::kCivil, "Civil Petition", "Civil Pet.", 10, 8},
    {CaseType::kCivilAppeal, "Civil Appeal", "C.A.", 12, 9},
    {CaseType::kCivilReview, "Civil Review Petition", "C.R.P.", 4, 4},
    {CaseType::kCriminal, "Criminal Petition", "Crl. P.", 6, 5},
    {CaseType::kCriminalAppeal, "Criminal Appeal", "Crl. A.", 7, 6},
    {CaseType::kCriminalMiscApplication, "Criminal Miscellaneous Application", "Crl. M.A.", 3,
     3},
    {CaseType::kReference, "Reference", "Ref.", 1, 1},
    {CaseType::kJailPetition, "Jail Petition", "J.P.", 3, 2},
    {CaseType::kCivilPetitionLeaveToAppeal, "Civil Petition for Leave to Appeal", "C.P.L.A.", 5,
     4},
};

constexpr std::string_view kMonthNames[] = {"January", "February", "March",     "April",
                                            "May",     "June",     "July",      "August",
                                            "September", "October", "November", "December"};

const std::vector<std::string> &Parties() {
  static const std::vector<std::string> kParties = {
      "Muhammad Aslam",          "Federation of Pakistan",  "Province of Sindh",
      "Zahid Traders",           "Capital Development Authority",
      "Rana Nazir Ahmed",        "Pakistan Steel Mills",    "Karachi Building Authority",
      "Government of Punjab",    "Shahida Parveen",         "Water and Power Authority",
      "Election Commission",     "Abdul Ghafoor",           "Sui Gas Company",
  };
  return kParties;
}

// Sentences free of every grammar keyword.
const std::vector<std::string> &Filler() {
  static const std::vector<std::string> kFiller = {
      "The learned counsel for the petitioner was heard at length.",
      "We have considered the submissions made at the bar and perused the record.",
      "The respondents opposed the petition on merits.",
      "Notices were issued to the learned Attorney General.",
      "The matter was adjourned on the request of the parties.",
      "It is settled law that every public functionary must act fairly and in good faith.",
      "The impugned order suffers from no legal infirmity.",
      "The facts giving rise to this matter are briefly stated below.",
      "Learned counsel for the respondents supported the impugned decision.",
      "The record does not disclose any material irregularity.",
  };
  return kFiller;
}

std::vector<ArticleRef> ArticlePool() {
  std::vector<ArticleRef> pool;
  auto add = [&](int a, std::optional<char> suffix = std::nullopt,
                 std::optional<int> clause = std::nullopt) {
    pool.push_back(ArticleRef{a, suffix, clause});
  };
  add(184, std::nullopt, 3);
  add(199);
  add(185, std::nullopt, 3);
  add(9);
  add(25);
  add(187);
  add(4);
  add(14);
  add(18);
  add(10, 'A');
  add(19, 'A');
  add(2, 'A');
  add(25, 'A');
  add(188);
  add(189);
  add(190);
  add(212);
  add(209);
  add(175);
  add(187, std::nullopt, 1);
  add(62);
  add(63);
  add(90);
  add(24);
  add(13);
  add(37);
  add(38);
  add(204);
  add(218);
  add(270);
  return pool;
}

struct Pools {
  std::vector<ArticleRef> articles;
  std::vector<PldCitation> pld;
  std::vector<ScmrCitation> scmr;
};

Pools MakePools(uint64_t seed) {
  Rng rng = Rng::ForIndex(seed, std::numeric_limits<uint64_t>::max());
  static const std::vector<std::string> kCourts = {"SC", "SC", "SC", "SC", "FC",  "Lah",
                                                   "Kar", "Pesh", "Quetta", "AJK"};
  Pools p;
  p.articles = ArticlePool();
  std::set<PldCitation> seen_pld;
  while (p.pld.size() < 80) {
    PldCitation c{rng.Between(1950, 2013), rng.Pick(kCourts), rng.Between(1, 1500)};
    if (seen_pld.insert(c).second) p.pld.push_back(c);
  }
  std::set<ScmrCitation> seen_scmr;
  while (p.scmr.size() < 150) {
    ScmrCitation c{rng.Between(1970, 2014), rng.Between(1, 2500)};
    if (seen_scmr.insert(c).second) p.scmr.push_back(c);
  }
  return p;
}

// Skewed pick: low indices are more likely, which produces clear leaders
// and a long tail of singletons.
template <typename T>
const T &SkewedPick(Rng &rng, const std::vector<T> &pool) {
  return pool[rng.Below(rng.Below(pool.size()) + 1)];
}

std::string Ordinal(int d) {
  int tens = d % 100;
  if (tens >= 11 && tens <= 13) return fmt::format("{}th", d);
  switch (d % 10) {
    case 1: return fmt::format("{}st", d);
    case 2: return fmt::format("{}nd", d);
    case 3: return fmt::format("{}rd", d);
    default: return fmt::format("{}th", d);
  }
}

std::string RenderDate(Rng &rng, const Date &d) {
  switch (rng.Below(4)) {
    case 0: return fmt::format("{:02d}-{:02d}-{}", d.day, d.month, d.year);
    case 1: return fmt::format("{:02d}.{:02d}.{}", d.day, d.month, d.year);
    case 2: return fmt::format("{} {}, {}", Ordinal(d.day), kMonthNames[d.month - 1], d.year);
    default: return fmt::format("{} {}, {}", kMonthNames[d.month - 1], d.day, d.year);
  }
}

// A single-letter substitution, insertion or deletion inside one name token.
std::string Misspell(Rng &rng, const std::string &name) {
  auto tokens = text::Split(name, ' ');
  std::vector<size_t> editable;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].size() >= 4) editable.push_back(i);
  }
  std::string &tok = tokens[editable[rng.Below(editable.size())]];
  auto letter_other_than = [&](char c) {
    char lower = text::ToLower(c);
    char pick;
    do {
      pick = static_cast<char>('a' + rng.Below(26));
    } while (pick == lower);
    return pick;
  };
  switch (rng.Below(3)) {
    case 0: {
      size_t at = rng.Below(tok.size());
      tok[at] = letter_other_than(tok[at]);
      break;
    }
    case 1: {
      size_t at = 1 + rng.Below(tok.size());
      tok.insert(tok.begin() + static_cast<std::ptrdiff_t>(at),
                 static_cast<char>('a' + rng.Below(26)));
      break;
    }
    default:
      tok.erase(tok.begin() + static_cast<std::ptrdiff_t>(1 + rng.Below(tok.size() - 1)));
      break;
  }
  return text::Join(tokens, " ");
}

std::string RenderRefList(const std::vector<ArticleRef> &refs) {
  std::string out;
  for (size_t i = 0; i < refs.size(); ++i) {
    if (i > 0) out += (i + 1 == refs.size()) ? " and " : ", ";
    out += refs[i].Render();
  }
  return out;
}

const Designator &PickDesignator(Rng &rng, int year) {
  int total = 0;
  for (const auto &d : kDesignators) total += year < 2009 ? d.weight_pre : d.weight_post;
  int x = static_cast<int>(rng.Below(static_cast<uint64_t>(total)));
  for (const auto &d : kDesignators) {
    x -= year < 2009 ? d.weight_pre : d.weight_post;
    if (x < 0) return d;
  }
  return kDesignators[0];
}

SyntheticDoc GenerateDoc(const GeneratorOptions &options, const Pools &pools, size_t index) {
  Rng rng = Rng::ForIndex(options.seed, index);
  const NoiseProfile &noise = options.noise;
  SyntheticDoc doc;
  TruthEntry &truth = doc.truth;
  std::string id = fmt::format("doc-{:05d}", index + 1);
  truth.id = DocId(id);

  // Release date and title.
  int year = rng.Between(2005, 2014);
  Date date{year, rng.Between(1, 12), 1};
  date.day = rng.Between(1, DaysInMonth(date.year, date.month));
  std::string date_text = RenderDate(rng, date);
  if (rng.Chance(noise.date_missing_rate)) {
    date_text.clear();
  } else {
    truth.release_date = date;
  }
  auto render_designator = [&](const Designator &d) {
    truth.types.insert(d.type);
    bool abbreviated = rng.Chance(noise.title_variant_rate);
    return std::string(abbreviated ? d.short_form : d.long_form);
  };
  const Designator &primary = PickDesignator(rng, year);
  std::string title = fmt::format("{} No. {} of {}", render_designator(primary),
                                  rng.Between(1, 400), year);
  if (rng.Chance(0.2)) {
    const Designator &secondary = PickDesignator(rng, year);
    title += fmt::format(" in {} No. {} of {}", render_designator(secondary),
                         rng.Between(1, 400), year - static_cast<int>(rng.Below(3)));
  }
  truth.suo_moto = truth.types.count(CaseType::kSuoMoto) > 0;
  std::string petitioner = rng.Pick(Parties());
  std::string respondent = rng.Pick(Parties());

  // Jurisdiction.
  static constexpr JurisdictionKind kKinds[] = {
      JurisdictionKind::kOriginal, JurisdictionKind::kAppellate, JurisdictionKind::kReview,
      JurisdictionKind::kAdvisory, JurisdictionKind::kContempt};
  static constexpr int kKindWeights[] = {30, 50, 12, 3, 5};
  auto pick_kind = [&] {
    int x = static_cast<int>(rng.Below(100));
    for (size_t k = 0; k < std::size(kKinds); ++k) {
      x -= kKindWeights[k];
      if (x < 0) return kKinds[k];
    }
    return kKinds[0];
  };
  std::vector<JurisdictionKind> kinds;
  double jr = rng.Unit();
  if (jr >= 0.1) kinds.push_back(pick_kind());
  if (jr >= 0.85) {
    JurisdictionKind second = pick_kind();
    if (second != kinds.front()) kinds.push_back(second);
  }
  for (auto k : kinds) truth.jurisdiction.Add(k);

  // Bench.
  const auto &judges = options.roster->judges();
  size_t bench_size = 0;
  double br = rng.Unit();
  if (br >= 0.05) {
    bench_size = br < 0.08 ? std::min<size_t>(17, judges.size())
                           : static_cast<size_t>(rng.Between(2, 5));
  }
  std::vector<size_t> order(judges.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (size_t i = 0; i < bench_size; ++i) {
    std::swap(order[i], order[i + rng.Below(order.size() - i)]);
  }
  std::vector<std::string> bench_lines;
  for (size_t i = 0; i < bench_size; ++i) {
    const Judge &judge = judges[order[i]];
    truth.bench.push_back(judge.id);
    ++truth.judge_mentions;
    std::string name = judge.canonical_name;
    bool typo = rng.Chance(noise.judge_typo_rate);
    if (typo) name = Misspell(rng, name);
    std::string honorific = rng.Below(4) == 0 ? "Justice" : "Mr. Justice";
    std::string line = fmt::format("{} {}", honorific, name);
    if (i == 0 && rng.Chance(0.5)) line += ", CJ";
    if (typo) truth.typos.push_back(TypoMention{judge.id, line});
    bench_lines.push_back(std::move(line));
  }

  // Body citations.
  std::vector<std::string> sentences;
  int n_articles = rng.Between(0, 4);
  if (truth.suo_moto && n_articles == 0) n_articles = 1;
  std::vector<ArticleRef> refs;
  for (int i = 0; i < n_articles; ++i) {
    ArticleRef ref = (truth.suo_moto && i == 0) ? pools.articles[0]
                                                : SkewedPick(rng, pools.articles);
    if (truth.articles.insert(ref).second) refs.push_back(ref);
  }
  for (size_t i = 0; i < refs.size();) {
    size_t take = std::min<size_t>(refs.size() - i, 1 + rng.Below(3));
    std::vector<ArticleRef> group(refs.begin() + static_cast<std::ptrdiff_t>(i),
                                  refs.begin() + static_cast<std::ptrdiff_t>(i + take));
    if (group.size() == 1) {
      sentences.push_back(rng.Chance(0.5)
                              ? fmt::format("The petitioner invoked Article {} of the "
                                            "Constitution.",
                                            group[0].Render())
                              : fmt::format("Under Article {}, this Court may pass "
                                            "appropriate orders.",
                                            group[0].Render()));
    } else {
      sentences.push_back(fmt::format("Reliance was placed on Articles {} of the Constitution.",
                                      RenderRefList(group)));
    }
    i += take;
  }
  int n_pld = rng.Between(0, 4);
  for (int i = 0; i < n_pld; ++i) {
    const PldCitation &c = SkewedPick(rng, pools.pld);
    truth.pld.insert(c);
    sentences.push_back(fmt::format("This view finds support from {} v. {} ({}).",
                                    rng.Pick(Parties()), rng.Pick(Parties()), c.Render()));
  }
  int n_scmr = rng.Between(0, 5);
  for (int i = 0; i < n_scmr; ++i) {
    const ScmrCitation &c = SkewedPick(rng, pools.scmr);
    truth.scmr.insert(c);
    sentences.push_back(rng.Chance(0.5)
                            ? fmt::format("Reference may be made to the case reported as {}.",
                                          c.Render())
                            : fmt::format("The same principle was reiterated in {} v. {} "
                                          "({}).",
                                          rng.Pick(Parties()), rng.Pick(Parties()),
                                          c.Render()));
  }
  int n_filler = rng.Between(2, 6);
  for (int i = 0; i < n_filler; ++i) sentences.push_back(rng.Pick(Filler()));
  // Shuffle so citations land anywhere in the body.
  for (size_t i = sentences.size(); i > 1; --i) {
    std::swap(sentences[i - 1], sentences[rng.Below(i)]);
  }

  // Assemble.
  std::string text = "IN THE SUPREME COURT OF PAKISTAN\n";
  for (auto k : kinds) text += fmt::format("({} Jurisdiction)\n", JurisdictionKindName(k));
  text += "\n";
  if (bench_size > 0) {
    text += "PRESENT:\n";
    for (const auto &line : bench_lines) text += line + "\n";
    text += "\n";
  }
  text += title + "\n\n";
  text += fmt::format("{} ... Petitioner(s)\nVersus\n{} ... Respondent(s)\n\n", petitioner,
                      respondent);
  text += "JUDGMENT\n\n";
  for (size_t i = 0; i < sentences.size(); ++i) {
    text += sentences[i];
    text += (i % 3 == 2 || i + 1 == sentences.size()) ? "\n\n" : " ";
  }
  doc.text = std::move(text);

  doc.index.link = options.link_base + id + ".pdf";
  doc.index.title = title;
  doc.index.date = date_text;
  doc.index.description = fmt::format("{} v. {}", petitioner, respondent);
  return doc;
}

std::string EscapeHtml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

SyntheticCorpus GenerateCorpus(const GeneratorOptions &options) {
  options.noise.Validate();
  if (options.roster == nullptr || options.roster->size() < 2) {
    throw Error(ErrorCode::kInvalidProfile, "generator needs a roster of at least two judges");
  }
  Pools pools = MakePools(options.seed);
  SyntheticCorpus corpus;
  corpus.roster = options.roster;
  corpus.docs.reserve(options.n);
  for (size_t i = 0; i < options.n; ++i) corpus.docs.push_back(GenerateDoc(options, pools, i));
  return corpus;
}

void WriteCorpus(const SyntheticCorpus &corpus, const fs::path &dir) {
  fs::create_directories(dir);
  {
    CorpusStore store(dir);
    CorpusStore::Batch batch(&store);
    for (const auto &doc : corpus.docs) {
      MetadataRecord meta;
      meta.link = doc.index.link;
      meta.title = doc.index.title;
      meta.release_date = doc.truth.release_date;
      if (!doc.index.description.empty()) meta.description = doc.index.description;
      DocId id = store.AddRecord(meta);
      if (id != doc.truth.id) {
        throw Error(ErrorCode::kInvalidRecord,
                    fmt::format("link '{}' maps to '{}', expected '{}'", meta.link, id.value(),
                                doc.truth.id.value()));
      }
      if (store.Get(id, false)->status == DocStatus::kIndexed) {
        store.MarkFetched(id);
        store.AttachText(id, doc.text);
      }
    }
  }
  WriteFileAtomic(dir / "truth.jsonl", TruthToJsonl(corpus.truth()));
  std::vector<IndexRecord> index;
  for (const auto &doc : corpus.docs) index.push_back(doc.index);
  WriteFileAtomic(dir / "index.csv", WriteIndexCsv(index));

  std::string roster_csv;
  csv::AppendRow({"id", "canonical_name", "aliases"}, &roster_csv);
  for (const auto &judge : corpus.roster->judges()) {
    std::string aliases;
    for (const auto &alias : judge.aliases) {
      if (!aliases.empty()) aliases += '|';
      aliases += alias;
    }
    csv::AppendRow({judge.id, judge.canonical_name, aliases}, &roster_csv);
  }
  WriteFileAtomic(dir / "roster.csv", roster_csv);

  std::string page =
      "<!DOCTYPE html>\n<html><head><title>Judgments</title></head><body>\n"
      "<table class=\"judgments\">\n<tr><th>Title</th><th>Date</th><th>Parties</th></tr>\n";
  for (const auto &doc : corpus.docs) {
    const std::string &id = doc.truth.id.value();
    page += fmt::format("<tr><td><a href=\"docs/{}.txt\">{}</a></td><td>{}</td><td>{}</td></tr>\n",
                        id, EscapeHtml(doc.index.title), EscapeHtml(doc.index.date),
                        EscapeHtml(doc.index.description));
    WriteFileAtomic(dir / "site" / "docs" / (id + ".txt"), doc.text);
  }
  page += "</table>\n</body></html>\n";
  WriteFileAtomic(dir / "site" / "index.html", page);
}

// --- Oracle -----------------------------------------------------------------------
//
// Everything below enumerates the truth directly. It deliberately avoids the
// analytics fold and query functions; only the table renderers are shared.

namespace {

std::vector<RankedEntry> Rank(const std::map<std::string, int64_t> &counts) {
  std::vector<RankedEntry> entries;
  for (const auto &[key, n] : counts) entries.push_back(RankedEntry{key, n});
  std::sort(entries.begin(), entries.end(), [](const RankedEntry &a, const RankedEntry &b) {
    if (a.count != b.count) return a.count > b.count;
    std::string la = text::Lower(a.key), lb = text::Lower(b.key);
    if (la != lb) return la < lb;
    return a.key < b.key;
  });
  return entries;
}

std::vector<RankedEntry> Top(const std::map<std::string, int64_t> &counts, size_t k) {
  auto entries = Rank(counts);
  if (entries.size() > k) entries.resize(k);
  return entries;
}

}  // namespace

ReportBundle OracleStats(const GroundTruth &truth, const JudgeRoster &roster,
                         const ReportOptions &options) {
  std::map<int, int64_t> by_year, suo_by_year;
  int64_t undated = 0, suo_undated = 0;
  std::map<std::string, int64_t> types, jurisdictions, judges, articles, pld, scmr;
  std::map<int, int64_t> bench_sizes;
  for (const auto &t : truth) {
    if (t.release_date) {
      ++by_year[t.release_date->year];
      if (t.suo_moto) ++suo_by_year[t.release_date->year];
    } else {
      ++undated;
      if (t.suo_moto) ++suo_undated;
    }
    for (CaseType c : t.types) ++types[std::string(CaseTypeLabel(c))];
    if (!t.text_analyzed) continue;
    ++jurisdictions[t.jurisdiction.Label()];
    std::set<std::string> seen;
    for (const auto &id : t.bench) {
      const Judge *judge = roster.Find(id);
      std::string name = judge ? judge->canonical_name : id;
      if (seen.insert(name).second) ++judges[name];
    }
    if (!seen.empty()) ++bench_sizes[static_cast<int>(seen.size())];
    for (const auto &r : t.articles) ++articles[r.Render()];
    for (const auto &c : t.pld) ++pld[c.Render()];
    for (const auto &c : t.scmr) ++scmr[c.Render()];
  }

  YearSeries cases, suo;
  cases.undated = undated;
  suo.undated = suo_undated;
  if (!by_year.empty()) {
    for (int y = by_year.begin()->first; y <= by_year.rbegin()->first; ++y) {
      cases.points.emplace_back(y, by_year.count(y) ? by_year.at(y) : 0);
      suo.points.emplace_back(y, suo_by_year.count(y) ? suo_by_year.at(y) : 0);
    }
  }

  BenchStats bench;
  bench.full_bench_size = options.full_bench_size;
  int64_t seats = 0;
  for (const auto &[size, n] : bench_sizes) {
    bench.benches += n;
    seats += size * n;
    if (size == options.full_bench_size) bench.full_bench_count += n;
    bench.max = size;
  }
  if (bench.benches > 0) bench.mean = Ratio{seats, bench.benches};

  SuoMotoShare share;
  for (const auto &[y, n] : by_year) (y < options.split_year ? share.pre_total : share.post_total) += n;
  for (const auto &[y, n] : suo_by_year) (y < options.split_year ? share.pre_suo : share.post_suo) += n;
  if (share.pre_total > 0) share.pre = Ratio{100 * share.pre_suo, share.pre_total};
  if (share.post_total > 0) share.post = Ratio{100 * share.post_suo, share.post_total};

  std::map<std::string, ReportTable> tables;
  tables["cases_by_year"] = YearSeriesTable(ReportTitle("cases_by_year"), "cases", cases);
  tables["suo_moto_by_year"] =
      YearSeriesTable(ReportTitle("suo_moto_by_year"), "suo_moto_cases", suo);
  tables["by_type"] = RankedTable(ReportTitle("by_type"), "Type", Rank(types));
  tables["by_jurisdiction"] =
      RankedTable(ReportTitle("by_jurisdiction"), "Jurisdiction", Rank(jurisdictions));
  tables["top_judges"] = RankedTable(ReportTitle("top_judges"), "Name", Top(judges, options.top_k));
  tables["top_articles"] = ArticleTable(Top(articles, options.top_k));
  tables["top_pld"] = RankedTable(ReportTitle("top_pld"), "Citation", Top(pld, options.top_k));
  tables["top_scmr"] = RankedTable(ReportTitle("top_scmr"), "Citation", Top(scmr, options.top_k));
  tables["bench_stats"] = BenchStatsTable(bench);
  tables["suo_moto_share"] = SuoMotoShareTable(share, options.split_year);
  return RenderBundle(tables, cases, suo);
}

}  // namespace misl::testkit
