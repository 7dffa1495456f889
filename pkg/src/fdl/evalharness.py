"""Coverage and quality evaluation over a query set.

Every query runs through the keyword baseline alone and through the full
hybrid pipeline. The report counts zero-result queries under each, the
queries that gained results under the hybrid, and (when a labels file is
present) precision@5 for both paths. ``write_report`` renders the per-query
table as TSV plus summary figures next to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .pipeline import Engine

PRECISION_CUTOFF = 5


@dataclass
class QueryOutcome:
    query: str
    keyword_hits: int
    hybrid_hits: int
    gained: bool
    labeled: bool
    precision_keyword: Optional[float] = None
    precision_hybrid: Optional[float] = None


@dataclass
class EvalReport:
    n_queries: int
    zero_result_keyword: int
    zero_result_hybrid: int
    gained: int
    precision_at_5_keyword: Optional[float] = None
    precision_at_5_hybrid: Optional[float] = None

    def to_json(self) -> dict:
        return {
            "n_queries": self.n_queries,
            "zero_result_keyword": self.zero_result_keyword,
            "zero_result_hybrid": self.zero_result_hybrid,
            "gained": self.gained,
            "precision_at_5_keyword": self.precision_at_5_keyword,
            "precision_at_5_hybrid": self.precision_at_5_hybrid,
        }


def load_queries(path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def load_labels(path) -> dict[str, set[str]]:
    """TSV rows of ``query<TAB>entity_id[,entity_id...]``."""
    labels: dict[str, set[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line.strip():
                continue
            query, _, ids = line.partition("\t")
            labels[query.strip()] = {part.strip() for part in ids.split(",") if part.strip()}
    return labels


def precision_at_k(result_ids: list[str], relevant: set[str], k: int = PRECISION_CUTOFF) -> float:
    top = result_ids[:k]
    if not relevant:
        return 0.0
    return sum(1 for rid in top if rid in relevant) / float(k)


def run_eval(
    engine: Engine,
    queries: list[str],
    labels: Optional[dict[str, set[str]]] = None,
    k: int = 10,
) -> tuple[EvalReport, list[QueryOutcome]]:
    outcomes: list[QueryOutcome] = []
    for query in queries:
        keyword = engine.keyword_search(query, k)
        keyword_ids = [str(engine.graph.node(ref).props.get("id", "")) for ref, _ in keyword]
        response = engine.search(query, k=k)
        hybrid_ids = [r["entity_id"] for r in response["results"] if r["kind"] != "aggregate"]
        hybrid_count = len(response["results"])
        outcome = QueryOutcome(
            query=query,
            keyword_hits=len(keyword),
            hybrid_hits=hybrid_count,
            gained=(not keyword) and hybrid_count > 0,
            labeled=bool(labels) and query in labels,
        )
        if outcome.labeled:
            relevant = labels[query]
            outcome.precision_keyword = precision_at_k(keyword_ids, relevant)
            outcome.precision_hybrid = precision_at_k(hybrid_ids, relevant)
        outcomes.append(outcome)

    labeled = [o for o in outcomes if o.labeled]
    report = EvalReport(
        n_queries=len(outcomes),
        zero_result_keyword=sum(1 for o in outcomes if o.keyword_hits == 0),
        zero_result_hybrid=sum(1 for o in outcomes if o.hybrid_hits == 0),
        gained=sum(1 for o in outcomes if o.gained),
    )
    if labeled:
        report.precision_at_5_keyword = (
            sum(o.precision_keyword for o in labeled) / len(labeled))
        report.precision_at_5_hybrid = (
            sum(o.precision_hybrid for o in labeled) / len(labeled))
    return report, outcomes


def write_report(report: EvalReport, outcomes: list[QueryOutcome], out_dir) -> list[Path]:
    """Write per_query.tsv, report.json, and the summary figures."""
    import json

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    tsv_path = out_dir / "per_query.tsv"
    with open(tsv_path, "w", encoding="utf-8") as fh:
        fh.write("query\tkeyword_hits\thybrid_hits\tgained\t"
                 "precision_at_5_keyword\tprecision_at_5_hybrid\n")
        for o in outcomes:
            p_kw = "" if o.precision_keyword is None else f"{o.precision_keyword:.3f}"
            p_hy = "" if o.precision_hybrid is None else f"{o.precision_hybrid:.3f}"
            fh.write(f"{o.query}\t{o.keyword_hits}\t{o.hybrid_hits}\t"
                     f"{int(o.gained)}\t{p_kw}\t{p_hy}\n")
    written.append(tsv_path)

    json_path = out_dir / "report.json"
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(report.to_json(), fh, indent=2)
        fh.write("\n")
    written.append(json_path)

    fig, ax = plt.subplots(figsize=(6, 4))
    bars = ["zero-result\nkeyword", "zero-result\nhybrid", "gained"]
    values = [report.zero_result_keyword, report.zero_result_hybrid, report.gained]
    ax.bar(bars, values, color=["#b23b3b", "#3b6eb2", "#3bb26e"])
    for i, value in enumerate(values):
        ax.text(i, value + 0.5, str(value), ha="center")
    ax.set_ylabel("queries")
    ax.set_title(f"Coverage over {report.n_queries} queries")
    fig.tight_layout()
    coverage_path = out_dir / "coverage.png"
    fig.savefig(coverage_path, dpi=120)
    plt.close(fig)
    written.append(coverage_path)

    if report.precision_at_5_keyword is not None:
        fig, ax = plt.subplots(figsize=(5, 4))
        ax.bar(["keyword", "hybrid"],
               [report.precision_at_5_keyword, report.precision_at_5_hybrid],
               color=["#b23b3b", "#3bb26e"])
        ax.set_ylim(0.0, 1.0)
        ax.set_ylabel("precision@5")
        ax.set_title("Quality on labeled queries")
        for i, value in enumerate([report.precision_at_5_keyword,
                                   report.precision_at_5_hybrid]):
            ax.text(i, value + 0.02, f"{value:.3f}", ha="center")
        fig.tight_layout()
        precision_path = out_dir / "precision.png"
        fig.savefig(precision_path, dpi=120)
        plt.close(fig)
        written.append(precision_path)
    return written
