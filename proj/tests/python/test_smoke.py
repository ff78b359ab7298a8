# Copyright 2026 The misl Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Smoke tests for the Python bindings."""

import csv
import os
import pathlib

import pytest

import misl

FIXTURES = pathlib.Path(
    os.environ.get("MISL_FIXTURE_DIR", pathlib.Path(__file__).parents[1] / "fixtures")
)


def synthetic_pipeline(corpus, root, **overrides):
    return misl.Pipeline(
        root,
        index_url=(corpus / "site" / "index.html").resolve().as_uri(),
        converter_cmd="cp {in} {out}",
        roster_path=str(corpus / "roster.csv"),
        politeness_ms=0,
        jobs=4,
        **overrides,
    )


def test_extract_citations():
    text = (
        "Reliance was placed on PLD 2010 SC 1, PLD 1990 Lah 8 and "
        "1991 SCMR 1041, read with Article 184(3) of the Constitution."
    )
    found = misl.extract_citations(text)
    assert found["pld"] == ["PLD 2010 SC 1", "PLD 1990 Lah 8"]
    assert found["scmr"] == ["1991 SCMR 1041"]
    assert found["articles"] == ["184(3)"]


def test_resolve_case_types_reports_ambiguity():
    result = misl.resolve_case_types("C.P. No. 45 of 2010")
    assert result["ambiguities"]
    designator, candidates = result["ambiguities"][0]
    assert designator == "C.P."
    assert len(candidates) > 1


def test_canonicalize_judge_unknown_name_is_new():
    match = misl.canonicalize_judge("Mr. Justice Nobody Anywhere")
    assert not match["matched"]
    assert match["judge_id"] is None


def test_analyze_text_reads_the_release_year():
    facts = misl.analyze_text(
        "Suo Motu Case No. 4 of 2010", "Cited PLD 2009 SC 879.", date="14-08-2010"
    )
    assert facts["year"] == 2010
    assert facts["suo_moto"] is True


def test_pipeline_matches_oracle(tmp_path):
    corpus = tmp_path / "corpus"
    misl.generate_corpus(corpus, seed=7, n=60)
    pipeline = synthetic_pipeline(corpus, tmp_path / "run", top_k=5)
    bundle = pipeline.all()
    oracle = misl.oracle_stats(corpus / "truth.jsonl", corpus / "roster.csv", top_k=5)
    assert bundle == oracle
    funnel = pipeline.funnel()
    assert funnel["indexed"] == 60
    assert funnel["converted"] == 60
    assert (pathlib.Path(pipeline.reports_dir) / "by_type.csv").exists()


def test_rerun_is_a_no_op(tmp_path):
    corpus = tmp_path / "corpus"
    misl.generate_corpus(corpus, seed=3, n=20)
    pipeline = synthetic_pipeline(corpus, tmp_path / "run")
    pipeline.all()
    again = synthetic_pipeline(corpus, tmp_path / "run")
    again.crawl()
    assert again.fetch()["processed"] == 0
    assert again.convert()["processed"] == 0


def test_stage_order_error_carries_code(tmp_path):
    pipeline = misl.Pipeline(tmp_path, politeness_ms=0)
    with pytest.raises(misl.MislError) as info:
        pipeline.report()
    assert info.value.code == "StageOrderError"
    assert "analyze" in str(info.value)


def test_unknown_config_key_is_rejected(tmp_path):
    with pytest.raises(misl.MislError) as info:
        misl.Pipeline(tmp_path, no_such_key=1)
    assert info.value.code == "Config"


def test_micro_fixture_tables(tmp_path):
    fixture = FIXTURES / "micro"
    root = tmp_path / "root"
    root.mkdir()
    with open(fixture / "index.csv", newline="") as src:
        rows = list(csv.DictReader(src))
    for row in rows:
        row["link"] = (fixture / row["link"]).resolve().as_uri()
    with open(root / "index.csv", "w", newline="") as dst:
        writer = csv.DictWriter(dst, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)

    bundle = misl.Pipeline(root, config=fixture / "misl.conf").all()
    for expected in sorted((fixture / "expected").glob("*.csv")):
        if expected.name in bundle:
            assert bundle[expected.name] == expected.read_text(), expected.name
