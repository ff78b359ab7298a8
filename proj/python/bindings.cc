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

// Python bindings for the judgment mining library.
//
// Structured results (facts, funnels) cross the boundary as plain dicts and
// lists; report bundles are {file name: contents}.

#include <optional>
#include <string>

#include <nlohmann/json.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "misl/analytics.h"
#include "misl/error.h"
#include "misl/extraction.h"
#include "misl/normalization.h"
#include "misl/pipeline.h"
#include "misl/reporting.h"
#include "misl/testkit.h"

namespace py = pybind11;
namespace fs = std::filesystem;

namespace {

py::object ToPython(const nlohmann::json &j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::dict FunnelDict(const misl::Funnel &f) {
  py::dict d;
  d["indexed"] = f.indexed;
  d["dead_link"] = f.dead_link;
  d["fetched"] = f.fetched;
  d["converted"] = f.converted;
  d["conversion_failed"] = f.conversion_failed;
  d["pending"] = f.pending;
  return d;
}

py::dict StageDict(const misl::StageResult &r) {
  py::dict d;
  d["processed"] = r.processed;
  d["failed"] = r.failed;
  d["transient"] = r.transient;
  d["funnel"] = FunnelDict(r.funnel);
  return d;
}

// Runs a stage with the GIL released; converting the result needs it back.
py::dict Released(misl::Pipeline &p, misl::StageResult (misl::Pipeline::*stage)()) {
  misl::StageResult r;
  {
    py::gil_scoped_release release;
    r = (p.*stage)();
  }
  return StageDict(r);
}

const misl::JudgeRoster &RosterFor(const std::optional<fs::path> &path,
                                   std::optional<misl::JudgeRoster> *storage) {
  if (!path) return misl::JudgeRoster::Default();
  *storage = misl::JudgeRoster::Load(*path);
  return **storage;
}

misl::RunConfig MakeConfig(const fs::path &root, const std::optional<fs::path> &config_file,
                           const py::dict &overrides) {
  misl::KeyValueConfig kv = misl::RunConfig::DefaultValues();
  if (config_file) {
    misl::KeyValueConfig file = misl::KeyValueConfig::Load(*config_file);
    for (const auto &[key, value] : file.values()) kv.Set(key, value);
  }
  kv.ApplyEnvironment("MISL_");
  for (const auto &[key, value] : overrides) {
    kv.Set(py::str(key), py::str(value));
  }
  kv.Set("root", root.string());
  return misl::RunConfig::FromConfig(kv);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mining Supreme Court judgments: extraction, aggregation and reports.";

  // Raised for every library error; `code` names the ErrorCode and `line`
  // the offending input line (0 when not applicable).
  static PyObject *error_type = PyErr_NewException("misl._core.MislError", PyExc_RuntimeError,
                                                   nullptr);
  m.attr("MislError") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const misl::Error &e) {
      py::object exc = py::handle(error_type)(e.what());
      exc.attr("code") = std::string(misl::ErrorCodeName(e.code()));
      exc.attr("line") = e.line();
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def(
      "resolve_case_types",
      [](const std::string &title, std::optional<fs::path> lookup_path) {
        misl::LookupTable table =
            lookup_path ? misl::LookupTable::Load(*lookup_path) : misl::LookupTable::Default();
        misl::CaseTypeResolution r = misl::ResolveCaseTypes(title, table);
        py::list types, ambiguities;
        for (auto t : r.types) types.append(std::string(misl::CaseTypeLabel(t)));
        for (const auto &a : r.ambiguities) {
          py::list candidates;
          for (auto t : a.candidates) candidates.append(std::string(misl::CaseTypeLabel(t)));
          ambiguities.append(py::make_tuple(a.designator, candidates));
        }
        py::dict d;
        d["types"] = types;
        d["ambiguities"] = ambiguities;
        return d;
      },
      py::arg("title"), py::arg("lookup_path") = py::none(),
      "Case types named in a title, plus designators that stay ambiguous.");

  m.def(
      "canonicalize_judge",
      [](const std::string &raw, std::optional<fs::path> roster_path) {
        std::optional<misl::JudgeRoster> storage;
        misl::JudgeMatch match = misl::CanonicalizeJudge(raw, RosterFor(roster_path, &storage));
        py::dict d;
        d["matched"] = match.matched();
        d["judge_id"] = match.judge_id.empty() ? py::object(py::none()) : py::str(match.judge_id);
        d["name"] = match.name;
        return d;
      },
      py::arg("raw"), py::arg("roster_path") = py::none());

  m.def(
      "extract_citations",
      [](const std::string &text) {
        py::list pld, scmr, articles;
        for (const auto &c : misl::ExtractPld(text)) pld.append(c.citation.Render());
        for (const auto &c : misl::ExtractScmr(text)) scmr.append(c.Render());
        for (const auto &a : misl::ExtractArticleRefs(text)) articles.append(a.Render());
        py::dict d;
        d["pld"] = pld;
        d["scmr"] = scmr;
        d["articles"] = articles;
        return d;
      },
      py::arg("text"), "PLD, SCMR and Article references in order of appearance.");

  m.def(
      "analyze_text",
      [](const std::string &title, const std::string &text, const std::string &date,
         std::optional<fs::path> roster_path) {
        std::optional<misl::JudgeRoster> storage;
        misl::AnalysisTables tables;
        tables.roster = &RosterFor(roster_path, &storage);
        misl::Document doc;
        doc.id = misl::DocId("doc");
        doc.meta.link = "doc";
        doc.meta.title = title;
        doc.meta.release_date = misl::ParseReleaseDate(date);
        doc.text = text;
        doc.status = misl::DocStatus::kConverted;
        return ToPython(misl::FactsToJson(misl::AnalyzeDocument(doc, tables)));
      },
      py::arg("title"), py::arg("text"), py::arg("date") = "",
      py::arg("roster_path") = py::none(), "Facts for one judgment, as a dict.");

  m.def(
      "generate_corpus",
      [](const fs::path &out, uint64_t seed, size_t n, double judge_typo_rate,
         double title_variant_rate, double date_missing_rate) {
        misl::testkit::GeneratorOptions options;
        options.seed = seed;
        options.n = n;
        options.noise = {judge_typo_rate, title_variant_rate, date_missing_rate};
        misl::testkit::WriteCorpus(misl::testkit::GenerateCorpus(options), out);
      },
      py::arg("out"), py::arg("seed") = 42, py::arg("n") = 100, py::arg("judge_typo_rate") = 0.0,
      py::arg("title_variant_rate") = 0.0, py::arg("date_missing_rate") = 0.0,
      "Writes a synthetic corpus with ground truth under `out`.");

  m.def(
      "oracle_stats",
      [](const fs::path &truth_path, const fs::path &roster_path, size_t top_k, int split_year) {
        misl::ReportOptions options;
        options.top_k = top_k;
        options.split_year = split_year;
        return misl::testkit::OracleStats(
            misl::testkit::TruthFromJsonl(misl::ReadFile(truth_path)),
            misl::JudgeRoster::Load(roster_path), options);
      },
      py::arg("truth_path"), py::arg("roster_path"), py::arg("top_k") = 10,
      py::arg("split_year") = 2009, "Report bundle computed directly from ground truth.");

  py::class_<misl::Pipeline>(m, "Pipeline")
      .def(py::init([](const fs::path &root, std::optional<fs::path> config,
                       const py::kwargs &overrides) {
             return std::make_unique<misl::Pipeline>(MakeConfig(root, config, overrides));
           }),
           py::arg("root"), py::arg("config") = py::none(),
           "Pipeline over a corpus root. Keyword arguments override config keys, e.g. "
           "Pipeline(root, index_url=..., converter_cmd='cp {in} {out}', top_k=5).")
      .def("crawl", [](misl::Pipeline &p) { return StageDict(p.Crawl()); })
      .def("fetch", [](misl::Pipeline &p) { return Released(p, &misl::Pipeline::Fetch); })
      .def("convert", [](misl::Pipeline &p) { return Released(p, &misl::Pipeline::Convert); })
      .def("analyze", [](misl::Pipeline &p) { return Released(p, &misl::Pipeline::Analyze); })
      .def("report", &misl::Pipeline::Report, py::call_guard<py::gil_scoped_release>())
      .def("all", &misl::Pipeline::All, py::call_guard<py::gil_scoped_release>())
      .def("funnel", [](misl::Pipeline &p) { return FunnelDict(p.CurrentFunnel()); })
      .def_property_readonly("reports_dir", &misl::Pipeline::reports_dir);
}
