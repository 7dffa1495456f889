import pytest

from fdl.evalharness import (
    load_labels,
    load_queries,
    precision_at_k,
    run_eval,
    write_report,
)


def test_load_queries(data_dir):
    queries = load_queries(data_dir / "queries.txt")
    assert len(queries) == 100
    assert all(q == q.strip() and q for q in queries)


def test_load_labels(data_dir):
    labels = load_labels(data_dir / "labels.tsv")
    assert labels
    for query, ids in labels.items():
        assert ids, query
        assert all(i.startswith(("prov-", "loc-")) for i in ids)


def test_precision_at_k():
    assert precision_at_k(["a", "b", "c"], {"a", "c"}) == pytest.approx(2 / 5)
    assert precision_at_k([], {"a"}) == 0.0
    assert precision_at_k(["a", "b", "c", "d", "e", "f"], {"f"}) == 0.0  # rank 6 missed
    assert precision_at_k(["x", "y"], set()) == 0.0


def test_run_eval_invariants(engine):
    queries = ["kids doctor", "radiology", "hello world"]
    labels = {"kids doctor": {"prov-001"}}
    report, outcomes = run_eval(engine, queries, labels, k=10)
    assert report.n_queries == 3
    assert report.gained <= report.zero_result_keyword
    assert report.zero_result_hybrid <= report.zero_result_keyword
    assert len(outcomes) == 3
    assert outcomes[0].gained  # "kids doctor" only answers through the graph
    assert not outcomes[2].hybrid_hits


def test_run_eval_without_labels(engine):
    report, _ = run_eval(engine, ["kids doctor"], None, k=5)
    assert report.precision_at_5_keyword is None
    assert report.precision_at_5_hybrid is None


def test_write_report_files(engine, tmp_path):
    queries = ["kids doctor", "radiology"]
    labels = {"kids doctor": {"prov-001"}}
    report, outcomes = run_eval(engine, queries, labels, k=5)
    written = write_report(report, outcomes, tmp_path / "reports")
    names = {p.name for p in written}
    assert {"per_query.tsv", "report.json", "coverage.png", "precision.png"} <= names
    tsv = (tmp_path / "reports" / "per_query.tsv").read_text().splitlines()
    assert tsv[0].startswith("query\t")
    assert len(tsv) == 1 + len(queries)
    for path in written:
        assert path.stat().st_size > 0
