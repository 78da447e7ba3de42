"""Score decomposition records and their serialization.

An explanation captures, per component, every best-match clause pair with
its flat score, weighted score, contribution weight w_g, and the
contribution normalized as a proportion of the component total.  The
component score is recomputable from the records, and the final score is
recomputable from the component scores, so the explanation is an audit
trail for the similarity value, not a parallel implementation.

``emit`` writes json, csv, or svg with deterministic bytes; ``png`` renders
the same histogram through matplotlib for quick visual inspection.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass

from .cnf import CompiledArgument
from .core import SimConfig, combine_eta, score_sets
from .weights import ComparisonWeights

FORMATS = ("json", "csv", "svg", "png")


@dataclass(frozen=True)
class MatchRecord:
    component: str
    source_clause: str
    matched_clause: str
    direction: str
    flat: float
    weighted: float
    w_g: float
    proportion: float


@dataclass(frozen=True)
class Explanation:
    pair: tuple[str, str]
    eta: float
    support_score: float
    claim_score: float
    final_score: float
    records: tuple[MatchRecord, ...]

    def component_records(self, component: str) -> tuple[MatchRecord, ...]:
        return tuple(r for r in self.records if r.component == component)

    def recompute_component(self, component: str) -> float:
        """The w_g-weighted mean of the component's weighted scores."""
        records = self.component_records(component)
        if not records:
            return self.support_score if component == "support" else self.claim_score
        total = sum(r.w_g for r in records)
        if total == 0.0:
            return 0.0
        return sum(r.w_g * r.weighted for r in records) / total

    def recompute_final(self) -> float:
        return combine_eta(self.support_score, self.claim_score, self.eta)


def explain(
    a: CompiledArgument,
    b: CompiledArgument,
    config: SimConfig,
    weights: ComparisonWeights,
) -> Explanation:
    """Decompose sim_arg(a, b); the recomputed final score is the score."""
    wa = weights.profile_for(a.id)
    wb = weights.profile_for(b.id)

    records: list[MatchRecord] = []
    scores = {}
    for component, phi, psi, wphi, wpsi in (
        ("support", a.support, b.support, wa.support, wb.support),
        ("claim", a.claim, b.claim, wa.claim, wb.claim),
    ):
        result = score_sets(phi, psi, config, wphi, wpsi)
        scores[component] = result.score
        total_w = sum(p.w_g for p in result.pairs)
        for p in result.pairs:
            records.append(
                MatchRecord(
                    component=component,
                    source_clause=str(p.pair.source),
                    matched_clause=str(p.pair.matched),
                    direction=p.pair.direction,
                    flat=p.flat,
                    weighted=p.weighted,
                    w_g=p.w_g,
                    proportion=p.w_g / total_w if total_w else 0.0,
                )
            )

    return Explanation(
        pair=(a.id, b.id),
        eta=config.eta,
        support_score=scores["support"],
        claim_score=scores["claim"],
        final_score=combine_eta(scores["support"], scores["claim"], config.eta),
        records=tuple(records),
    )


# --- serialization ----------------------------------------------------------

CSV_COLUMNS = (
    "component",
    "source_clause",
    "matched_clause",
    "direction",
    "flat",
    "weighted",
    "w_g",
    "proportion",
)


def to_json(e: Explanation) -> str:
    payload = {
        "pair": list(e.pair),
        "eta": e.eta,
        "support_score": e.support_score,
        "claim_score": e.claim_score,
        "final_score": e.final_score,
        "records": [asdict(r) for r in e.records],
    }
    return json.dumps(payload, indent=2) + "\n"


def from_json(text: str) -> Explanation:
    data = json.loads(text)
    return Explanation(
        pair=(data["pair"][0], data["pair"][1]),
        eta=data["eta"],
        support_score=data["support_score"],
        claim_score=data["claim_score"],
        final_score=data["final_score"],
        records=tuple(MatchRecord(**r) for r in data["records"]),
    )


def to_csv(e: Explanation) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in e.records:
        writer.writerow(
            [
                r.component,
                r.source_clause,
                r.matched_clause,
                r.direction,
                f"{r.flat:.6g}",
                f"{r.weighted:.6g}",
                f"{r.w_g:.6g}",
                f"{r.proportion:.6g}",
            ]
        )
    return buffer.getvalue()


def _grouped(records) -> list[tuple[str, str, float, float]]:
    """Merge the two directions of each clause pair: (source, matched,
    weighted score, summed proportion), ordered by canonical clause pair."""
    groups: dict[tuple[str, str], list[float]] = {}
    for r in records:
        key = tuple(sorted((r.source_clause, r.matched_clause)))
        entry = groups.setdefault(key, [r.weighted, 0.0])
        entry[1] += r.proportion
    return [(k[0], k[1], v[0], v[1]) for k, v in sorted(groups.items())]


_SVG_W = 800
_SVG_H = 400


def to_svg(e: Explanation) -> str:
    """Fixed 800x400 canvas: per component, blue bars for weighted clause
    similarities, red bars for their proportions, a line at the component score."""
    panels = [
        ("support", _grouped(e.component_records("support")), e.support_score),
        ("claim", _grouped(e.component_records("claim")), e.claim_score),
    ]
    half = _SVG_W // 2
    top, bottom = 40, 360
    span = bottom - top

    def y(value: float) -> float:
        return bottom - value * span

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" height="{_SVG_H}" '
        f'viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<title>similarity decomposition {e.pair[0]} vs {e.pair[1]}</title>',
        f'<text x="10" y="20" font-size="14">{e.pair[0]} vs {e.pair[1]}   '
        f'final={e.final_score:.3f} (eta={e.eta:.3f})</text>',
    ]
    for panel_index, (name, groups, score) in enumerate(panels):
        x0 = panel_index * half
        parts.append(f'<g data-component="{name}" data-component-score="{score:.6f}">')
        parts.append(
            f'<text x="{x0 + 10}" y="{top - 6}" font-size="12">{name}: {score:.3f}</text>'
        )
        parts.append(
            f'<line x1="{x0 + 10}" y1="{y(score):.2f}" x2="{x0 + half - 10}" '
            f'y2="{y(score):.2f}" stroke="green" stroke-width="2" '
            f'data-score="{score:.3f}"/>'
        )
        if groups:
            slot = (half - 20) / len(groups)
            bar = min(30.0, slot / 3)
            for k, (source, matched, weighted, proportion) in enumerate(groups):
                gx = x0 + 10 + k * slot
                parts.append(
                    f'<g data-pair="{source} / {matched}" '
                    f'data-weighted="{weighted:.3f}" data-proportion="{proportion:.3f}">'
                )
                parts.append(
                    f'<rect x="{gx + slot / 2 - bar:.2f}" y="{y(weighted):.2f}" '
                    f'width="{bar:.2f}" height="{bottom - y(weighted):.2f}" fill="steelblue"/>'
                )
                parts.append(
                    f'<rect x="{gx + slot / 2:.2f}" y="{y(proportion):.2f}" '
                    f'width="{bar:.2f}" height="{bottom - y(proportion):.2f}" fill="indianred"/>'
                )
                parts.append(
                    f'<text x="{gx + slot / 2 - bar:.2f}" y="{bottom + 14}" '
                    f'font-size="9">{weighted:.3f}/{proportion:.3f}</text>'
                )
                parts.append("</g>")
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def to_png(e: Explanation, destination) -> None:
    """Matplotlib rendering of the same decomposition, for human consumption."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(10, 5), sharey=True)
    for ax, name, score in (
        (axes[0], "support", e.support_score),
        (axes[1], "claim", e.claim_score),
    ):
        groups = _grouped(e.component_records(name))
        xs = range(len(groups))
        ax.bar(
            [x - 0.2 for x in xs],
            [g[2] for g in groups],
            width=0.4,
            color="steelblue",
            label="weighted similarity",
        )
        ax.bar(
            [x + 0.2 for x in xs],
            [g[3] for g in groups],
            width=0.4,
            color="indianred",
            label="proportion",
        )
        ax.axhline(score, color="green", linewidth=2, label=f"component score {score:.3f}")
        ax.set_title(f"{name}: {score:.3f}")
        ax.set_xticks(list(xs))
        ax.set_xticklabels([str(k + 1) for k in xs])
        ax.set_ylim(0, 1.05)
        ax.legend(fontsize=8)
    fig.suptitle(f"{e.pair[0]} vs {e.pair[1]}: final {e.final_score:.3f}")
    fig.tight_layout()
    fig.savefig(destination)
    plt.close(fig)


def emit(e: Explanation, format: str, destination) -> None:
    """Write the explanation to ``destination`` in the requested format."""
    if format == "json":
        text = to_json(e)
    elif format == "csv":
        text = to_csv(e)
    elif format == "svg":
        text = to_svg(e)
    elif format == "png":
        to_png(e, destination)
        return
    else:
        raise ValueError(f"unknown format {format!r}; choose from {FORMATS}")
    with open(destination, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
