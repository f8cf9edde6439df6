"""Command line surface: generate, eval, release, sensitivity, verify,
experiment.

All randomness flows from one --seed flag (env fallback
CONTINUAL_DP_SEED); when unset the seed comes from OS entropy and is
printed.  Every output file starts with comment lines embedding the
seed, the configuration, and the artifact version.

Exit codes: 0 ok, 1 internal error, 2 usage or config error,
3 unsupported combination (no finite sensitivity bound).
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import __version__
from .errors import ContinualDPError, UnboundedSensitivity, UnknownCombination
from .functions import GraphFunction, evaluate
from .generators import (
    EVENT_TARGETS,
    adjacent_pair,
    expected_values,
    gen_event_level,
    target_function,
)
from .graphs import GraphSequence, SequenceKind
from .monotone import monotone_release
from .noise import RandomSource, concentration_bound, sample_laplace
from .oracle import OracleScope, compare_with_table
from .release import release as diff_release
from .release import sensitivity_bound, theoretical_release_error
from .seqio import parse_sequence, serialize_sequence

SEED_ENV = "CONTINUAL_DP_SEED"


def _wrap_errors(fn):
    @functools.wraps(fn)
    def inner(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (UnboundedSensitivity, UnknownCombination) as exc:
            click.echo(f"unsupported combination: {exc}", err=True)
            sys.exit(3)
        except ContinualDPError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return inner


def _resolve_seed(seed: int | None) -> RandomSource:
    rng = RandomSource(seed)
    if seed is None:
        click.echo(f"seed: {rng.seed}")
    return rng


def _metadata_lines(seed: int, config: dict) -> list[str]:
    return [
        f"# artifact-version: {__version__}",
        f"# seed: {seed}",
        "# config: " + json.dumps(config, sort_keys=True),
    ]


def _write_lines(path: str | None, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if path is None:
        click.echo(text, nl=False)
    else:
        Path(path).write_text(text)


def _load_sequence(path: str) -> GraphSequence:
    return parse_sequence(Path(path).read_text())


def _build_function(function, tau, k, s, t) -> GraphFunction:
    return GraphFunction(function, tau=tau, k=k, s=s, t=t)


_function_options = [
    click.option("--function", required=True, help="graph statistic name"),
    click.option("--tau", type=int, default=None, help="degree threshold for high_degree"),
    click.option("--k", type=int, default=None, help="star size for kstar_count"),
    click.option("--s", type=int, default=None, help="source terminal for st_min_cut"),
    click.option("--t", "t_", type=int, default=None, help="sink terminal for st_min_cut"),
]


def _add_options(opts):
    def deco(fn):
        for opt in reversed(opts):
            fn = opt(fn)
        return fn

    return deco


@click.group()
@click.version_option(version=__version__)
def main() -> None:
    """Differentially private continual release of graph statistics."""


@main.command()
@click.option("--target", required=True, type=click.Choice(sorted(EVENT_TARGETS)))
@click.option("--adjacency", default="edge", type=click.Choice(["edge", "node"]))
@click.option("--sigma", required=True, help="binary stream, e.g. 101")
@click.option("--weight", "-W", type=int, default=1)
@click.option("--degree", "-D", type=int, default=None)
@click.option("--tau", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--flip", type=int, default=None, help="also emit the pair with this bit flipped")
@click.option("--out", required=True, type=click.Path())
@_wrap_errors
def generate(target, adjacency, sigma, weight, degree, tau, k, flip, out) -> None:
    """Emit an adversarial update log plus an expected-value sidecar."""
    if any(ch not in "01" for ch in sigma) or not sigma:
        raise click.UsageError(f"sigma must be a non-empty 0/1 string, got {sigma!r}")
    bits = [int(ch) for ch in sigma]
    config = {
        "target": target,
        "adjacency": adjacency,
        "sigma": sigma,
        "W": weight,
        "D": degree,
        "tau": tau,
        "k": k,
    }
    if flip is None:
        seq = gen_event_level(target, adjacency, bits, W=weight, D=degree, tau=tau, k=k)
        expected = expected_values(target, adjacency, bits, W=weight, D=degree)
        Path(out).write_text(serialize_sequence(seq))
        sidecar = {
            "config": config,
            "version": __version__,
            "expected": expected,
            "function": target_function(target, tau=tau, k=k).label(),
        }
    else:
        pair = adjacent_pair(
            target, adjacency, bits, flip, W=weight, D=degree, tau=tau, k=k
        )
        Path(out).write_text(serialize_sequence(pair.a))
        Path(str(out) + ".partner").write_text(serialize_sequence(pair.b))
        sidecar = {
            "config": {**config, "flip": flip},
            "version": __version__,
            "expected": pair.expected_a,
            "expected_partner": pair.expected_b,
            "function": pair.target.label(),
            "witness": {
                "kind": pair.witness.kind.value,
                "element": list(pair.witness.element)
                if isinstance(pair.witness.element, tuple)
                else pair.witness.element,
                "t_star": pair.witness.t_star,
            },
        }
    Path(str(out) + ".expected.json").write_text(json.dumps(sidecar, indent=2) + "\n")
    click.echo(f"wrote {out}")


@main.command("eval")
@_add_options(_function_options)
@click.option("--input", "input_", required=True, type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
@_wrap_errors
def eval_cmd(function, tau, k, s, t_, input_, out) -> None:
    """Exact per-step values of a statistic along an update log."""
    f = _build_function(function, tau, k, s, t_)
    seq = _load_sequence(input_)
    n_bins = len(seq.node_universe()) if f.name == "degree_histogram" else None
    lines = ["t,value"]
    for t, g in enumerate(seq.iter_graphs(), start=1):
        val = evaluate(f, g, n_bins=n_bins)
        if isinstance(val, tuple):
            lines.append(f"{t},\"{';'.join(str(v) for v in val)}\"")
        else:
            lines.append(f"{t},{val}")
    _write_lines(out, lines)


@main.command("release")
@click.option("--mechanism", default="diff", type=click.Choice(["diff", "monotone"]))
@_add_options(_function_options)
@click.option("--epsilon", type=float, required=True)
@click.option("--delta", type=float, required=True)
@click.option("--beta", type=float, default=0.5, help="monotone multiplicative error")
@click.option("--range-r", type=float, default=None, help="monotone value range override")
@click.option("--adjacency", default="edge", type=click.Choice(["edge", "node"]))
@click.option("--degree-bound", "-D", type=int, default=None)
@click.option("--weight-bound", "-W", type=int, default=None)
@click.option("--input", "input_", required=True, type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
@click.option("--seed", type=int, default=None, envvar=SEED_ENV)
@click.option("--noise-off", is_flag=True, help="test hook: zero noise, flagged in output")
@_wrap_errors
def release_cmd(
    mechanism, function, tau, k, s, t_, epsilon, delta, beta, range_r,
    adjacency, degree_bound, weight_bound, input_, out, seed, noise_off,
) -> None:
    """Private per-step release of a statistic along an update log."""
    f = _build_function(function, tau, k, s, t_)
    seq = _load_sequence(input_)
    rng = _resolve_seed(seed)
    config = {
        "mechanism": mechanism,
        "function": f.label(),
        "epsilon": epsilon,
        "delta": delta,
        "adjacency": adjacency,
        "D": degree_bound,
        "W": weight_bound,
        "noise_off": noise_off,
    }
    if mechanism == "diff":
        report = diff_release(
            seq, f, epsilon, delta, rng,
            adjacency=adjacency, D=degree_bound, W=weight_bound, noise_off=noise_off,
        )
        lines = _metadata_lines(rng.seed, config)
        lines.append("t,true,released,abs_error,bound")
        for rec in report.records:
            true = (
                ";".join(str(v) for v in rec.true)
                if isinstance(rec.true, tuple)
                else rec.true
            )
            rel = (
                ";".join(f"{v:.6f}" for v in rec.released)
                if isinstance(rec.released, tuple)
                else f"{rec.released:.6f}"
            )
            lines.append(f"{rec.t},{true},{rel},{rec.abs_error:.6f},{rec.bound:.6f}")
        _write_lines(out, lines)
        click.echo(
            f"max |error| {report.max_abs_error:.4f}, bound {report.bound:.4f}, "
            f"seed {rng.seed}"
        )
    else:
        config["beta"] = beta
        report = monotone_release(
            seq, f, epsilon, beta, delta, rng,
            r=range_r, W=weight_bound, noise_off=noise_off,
        )
        lines = _metadata_lines(rng.seed, config)
        lines.append("t,true,output,lower_ok,upper_ok,alpha")
        for rec in report.records:
            lines.append(
                f"{rec.t},{rec.true},{rec.output:.6f},"
                f"{int(rec.lower_ok)},{int(rec.upper_ok)},{rec.alpha:.6f}"
            )
        _write_lines(out, lines)
        click.echo(
            f"alpha {report.alpha:.4f}, top answers {report.top_count}/{report.c}, "
            f"seed {rng.seed}"
        )


@main.command("sensitivity")
@_add_options(_function_options)
@click.option("--adjacency", default="edge", type=click.Choice(["edge", "node"]))
@click.option(
    "--regime",
    default="incremental",
    type=click.Choice(["incremental", "decremental", "fully-dynamic"]),
)
@click.option("--n-max", type=int, default=5)
@click.option("--t-max", type=int, default=4)
@click.option("--w-max", type=int, default=1)
@click.option("--d-max", type=int, default=None)
@click.option("--max-pairs", type=int, default=200)
@click.option("--seed", type=int, default=None, envvar=SEED_ENV)
@click.option("--out", type=click.Path(), default=None)
@_wrap_errors
def sensitivity_cmd(
    function, tau, k, s, t_, adjacency, regime, n_max, t_max, w_max, d_max,
    max_pairs, seed, out,
) -> None:
    """Brute-force sensitivity check against the closed-form table."""
    f = _build_function(function, tau, k, s, t_)
    rng = _resolve_seed(seed)
    scope = OracleScope(
        n_max=n_max, T_max=t_max, W_max=w_max, D_max=d_max,
        adjacency=adjacency, regime=regime, max_pairs=max_pairs, seed=rng.seed,
    )
    verdict = compare_with_table(f, scope)
    result = {
        "version": __version__,
        "seed": rng.seed,
        "function": f.label(),
        "adjacency": adjacency,
        "regime": regime,
        "status": verdict.status,
        "oracle_value": verdict.oracle_value,
        "formula_at_max": verdict.formula_at_max,
        "pairs_tested": verdict.pairs_tested,
        "witness": [serialize_sequence(w) for w in verdict.witness]
        if verdict.witness
        else None,
    }
    text = json.dumps(result, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)
    if verdict.status == "Violation":
        sys.exit(1)


def _verify_sensitivity() -> list[tuple[str, bool]]:
    cells = [
        (GraphFunction("edge_count"), "edge", "incremental", None),
        (GraphFunction("high_degree", tau=2), "edge", "incremental", None),
        (GraphFunction("degree_histogram"), "edge", "incremental", 3),
        (GraphFunction("triangle_count"), "edge", "incremental", 3),
        (GraphFunction("kstar_count", k=2), "edge", "incremental", 3),
        (GraphFunction("mst_weight"), "edge", "incremental", None),
        (GraphFunction("edge_count"), "edge", "fully-dynamic", None),
        (GraphFunction("edge_count"), "node", "incremental", 4),
        (GraphFunction("triangle_count"), "node", "incremental", 4),
    ]
    results = []
    for f, adjacency, regime, d in cells:
        scope = OracleScope(
            n_max=5, T_max=3, W_max=2, D_max=d, adjacency=adjacency,
            regime=regime, max_pairs=60, seed=7,
        )
        verdict = compare_with_table(f, scope)
        ok = verdict.status != "Violation"
        results.append((f"sensitivity {f.label()} {adjacency}/{regime}: {verdict.status}", ok))
    return results


def _verify_generators() -> list[tuple[str, bool]]:
    results = []
    sigma = [1, 0, 1, 1, 0, 1]
    cases = [
        ("mst", "edge", dict(W=3)),
        ("mst", "node", dict(W=3)),
        ("min_cut", "edge", dict(W=3)),
        ("min_cut", "node", dict(W=3)),
        ("matching", "edge", dict(W=3)),
        ("matching", "node", dict(W=3)),
        ("edge_count", "edge", {}),
        ("high_degree", "edge", dict(tau=2)),
        ("degree_histogram", "edge", {}),
        ("triangle", "edge", {}),
        ("kstar", "edge", dict(k=2)),
        ("edge_count", "node", dict(D=4)),
        ("high_degree", "node", dict(D=4, tau=2)),
        ("degree_histogram", "node", dict(D=4)),
        ("triangle", "node", dict(D=4)),
        ("kstar", "node", dict(D=4, k=3)),
    ]
    for target, adjacency, kwargs in cases:
        f = target_function(target, tau=kwargs.get("tau"), k=kwargs.get("k"))
        seq = gen_event_level(target, adjacency, sigma, **kwargs)
        expect = expected_values(
            target, adjacency, sigma, W=kwargs.get("W", 1), D=kwargs.get("D")
        )
        ok = True
        for g, want in zip(seq.iter_graphs(), expect):
            val = evaluate(f, g)
            if f.name == "degree_histogram":
                val = val[2] if len(val) > 2 else 0
            if float(val) != float(want):
                ok = False
                break
        results.append((f"generator {target}/{adjacency} closed form", ok))
    return results


def _verify_bounds() -> list[tuple[str, bool]]:
    rng = RandomSource(11)
    trials, exceed = 2000, 0
    scales = [1.0] * 10
    bound = concentration_bound(scales, 0.05)
    for _ in range(trials):
        total = sum(sample_laplace(rng, b) for b in scales)
        if abs(total) > bound:
            exceed += 1
    ok = exceed / trials <= 0.05 + 0.02
    results = [(f"concentration bound exceeded {exceed}/{trials}", ok)]

    seq = gen_event_level("edge_count", "edge", [1, 0, 1, 1, 1, 0, 1, 1])
    report = diff_release(
        seq, GraphFunction("edge_count"), 1.0, 0.05, RandomSource(3), noise_off=True
    )
    ok = all(rec.abs_error == 0 for rec in report.records)
    results.append(("zero-noise reconstruction", ok))
    bound64 = theoretical_release_error(1.0, 1.0, 0.05, 64)
    bound4096 = theoretical_release_error(1.0, 1.0, 0.05, 4096)
    results.append(("error bound monotone in T", bound4096 > bound64))
    return results


@main.command("verify")
@click.argument("suite", type=click.Choice(["sensitivity", "generators", "bounds"]))
@_wrap_errors
def verify_cmd(suite) -> None:
    """Run an invariant suite; nonzero exit on any failure."""
    runner = {
        "sensitivity": _verify_sensitivity,
        "generators": _verify_generators,
        "bounds": _verify_bounds,
    }[suite]
    results = runner()
    failed = False
    for label, ok in results:
        click.echo(f"[{'PASS' if ok else 'FAIL'}] {label}")
        failed |= not ok
    if failed:
        sys.exit(1)


@main.command("experiment")
@_add_options(_function_options)
@click.option("--epsilon", type=float, required=True)
@click.option("--delta", type=float, required=True)
@click.option("--adjacency", default="edge", type=click.Choice(["edge", "node"]))
@click.option("--degree-bound", "-D", type=int, default=None)
@click.option("--weight-bound", "-W", type=int, default=None)
@click.option("--input", "input_", required=True, type=click.Path(exists=True))
@click.option("--trials", type=int, default=20)
@click.option("--seed", type=int, default=None, envvar=SEED_ENV)
@click.option("--out", required=True, type=click.Path())
@click.option("--plot", is_flag=True, help="also render a PNG next to the CSV")
@_wrap_errors
def experiment_cmd(
    function, tau, k, s, t_, epsilon, delta, adjacency, degree_bound,
    weight_bound, input_, trials, seed, out, plot,
) -> None:
    """Repeated seeded releases; per-trial max error vs. the bound."""
    f = _build_function(function, tau, k, s, t_)
    seq = _load_sequence(input_)
    rng = _resolve_seed(seed)
    config = {
        "function": f.label(),
        "epsilon": epsilon,
        "delta": delta,
        "adjacency": adjacency,
        "trials": trials,
    }
    lines = _metadata_lines(rng.seed, config)
    lines.append("trial,seed,max_abs_error,bound,within_bound")
    errors = []
    bound = 0.0
    for i in range(trials):
        child = rng.child(f"trial{i}")
        report = diff_release(
            seq, f, epsilon, delta, child,
            adjacency=adjacency, D=degree_bound, W=weight_bound,
        )
        bound = report.bound
        errors.append(report.max_abs_error)
        lines.append(
            f"{i},{child.seed},{report.max_abs_error:.6f},{bound:.6f},"
            f"{int(report.max_abs_error <= bound)}"
        )
    _write_lines(out, lines)
    within = sum(e <= bound for e in errors)
    click.echo(f"{within}/{trials} trials within bound {bound:.4f}, seed {rng.seed}")
    if plot:
        try:
            import matplotlib

            matplotlib.use("Agg")
            import matplotlib.pyplot as plt
        except ImportError:
            raise click.UsageError("matplotlib is required for --plot") from None
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.hist(errors, bins=min(20, max(5, trials // 5)))
        ax.axvline(bound, linestyle="--", label="theoretical bound")
        ax.set_xlabel("max |error| per trial")
        ax.set_ylabel("trials")
        ax.set_title(f"{f.label()} release, epsilon={epsilon}")
        ax.legend()
        png = str(Path(out).with_suffix(".png"))
        fig.savefig(png, dpi=120, bbox_inches="tight")
        click.echo(f"wrote {png}")


if __name__ == "__main__":
    main()
