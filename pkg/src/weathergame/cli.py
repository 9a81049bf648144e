"""Command-line interface: simulate agent cohorts, analyze event logs, serve the API."""

from __future__ import annotations

import json
import sys

import click

from . import analysis
from .analysis import (
    AgentPolicy,
    CONDITION_GROUPS,
    SignificanceMethod,
    aggregate,
    completed_sessions,
    significance,
)
from .engine import PresentationCondition
from .store import EventStore, read_jsonl

_CONDITION_CHOICES = [c.value.lower() for c in PresentationCondition] + ["all"]


@click.group()
def main():
    """Extended Weather Game experiment toolkit."""


@main.command()
@click.option("--policy", required=True, help="oracle | random | literacy:<q>")
@click.option("--sessions", "n_sessions", type=int, required=True)
@click.option(
    "--condition",
    type=click.Choice(_CONDITION_CHOICES, case_sensitive=False),
    default="all",
    show_default=True,
    help="Presentation condition; 'all' cycles round-robin.",
)
@click.option("--seed", type=int, default=0, show_default=True, help="Master seed.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def simulate(policy, n_sessions, condition, seed, out):
    """Run synthetic-agent sessions and write a JSON-lines event log."""
    pol = AgentPolicy.parse(policy)
    cond = None if condition == "all" else PresentationCondition(condition.upper())
    store = analysis.simulate(pol, n_sessions, cond, seed)
    with open(out, "w", encoding="utf-8") as fh:
        n = store.export(fh)
    click.echo(f"wrote {n} events for {n_sessions} sessions to {out}")


def _load_events(path):
    with open(path, "r", encoding="utf-8") as fh:
        return list(read_jsonl(fh))


def _render_table(rows, as_json):
    if as_json:
        click.echo(json.dumps([r.__dict__ for r in rows], indent=2))
        return
    header = f"{'group':<22} {'demographic':<14} {'n':>6} {'mean_gain':>10} {'confidence':>10}"
    click.echo(header)
    click.echo("-" * len(header))
    for r in rows:
        demo = r.demographic if r.demographic is not None else "-"
        click.echo(
            f"{r.group:<22} {demo:<14} {r.n:>6} {r.mean_gain:>10.2f} "
            f"{r.mean_confidence_pct:>9.1f}%"
        )


@main.command()
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--group-by", default=None, help="Demographics key, e.g. gender.")
@click.option(
    "--compare",
    nargs=2,
    default=None,
    help="Two condition groups to test, e.g. GRAPHICS_ONLY NLG_ONLY.",
)
@click.option(
    "--method",
    type=click.Choice(["welch", "ranksum"]),
    default="ranksum",
    show_default=True,
)
@click.option("--no-pool", is_flag=True, help="Report the five raw conditions.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def analyze(in_path, group_by, compare, method, no_pool, as_json):
    """Aggregate an event log into Table-style per-condition statistics."""
    try:
        events = _load_events(in_path)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    rows = aggregate(events, group_by=group_by, pool_conditions=not no_pool)
    _render_table(rows, as_json)
    if compare:
        group_a, group_b = (g.upper() for g in compare)

        def scores(target):
            out = []
            for s in completed_sessions(events):
                g = CONDITION_GROUPS[s.condition] if not no_pool else s.condition.value
                if g == target or s.condition.value == target:
                    out.append(s.balance)
            return out

        sample_a, sample_b = scores(group_a), scores(group_b)
        m = SignificanceMethod.WELCH_T if method == "welch" else SignificanceMethod.RANK_SUM
        result = significance(sample_a, sample_b, m)
        report = {
            "compare": [group_a, group_b],
            "n": [len(sample_a), len(sample_b)],
            "method": m.value,
            "p_value": result.p_value,
            "statistic": result.statistic,
            "degenerate": result.degenerate,
            "effect": analysis.effect(
                sum(sample_a) / len(sample_a), sum(sample_b) / len(sample_b)
            ),
        }
        if as_json:
            click.echo(json.dumps(report, indent=2))
        else:
            click.echo(
                f"\n{group_a} vs {group_b}: effect={report['effect']:+.2f} "
                f"p={report['p_value']:.4g} ({m.value}"
                + (", degenerate)" if result.degenerate else ")")
            )


@main.command()
@click.option("--addr", default="127.0.0.1:8000", show_default=True)
@click.option("--store", "store_path", type=click.Path(dir_okay=False), default=None)
@click.option("--seed", type=int, default=0, show_default=True, help="RNG master seed.")
def serve(addr, store_path, seed):
    """Serve the /v1 HTTP API (and the player UI bundle, if present)."""
    import uvicorn

    from .api import create_app

    host, _, port = addr.partition(":")
    app = create_app(store=EventStore(store_path), master_seed=seed)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000))


if __name__ == "__main__":
    main()
