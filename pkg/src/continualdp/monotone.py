"""Sparse vector technique and the multiplicative-error release of
monotone graph statistics.

The SVT instance draws its threshold perturbation zeta exactly once
and never resamples it; each query draws a fresh nu.  A query answers
Top when value + nu >= threshold + zeta (inclusive), Bottom otherwise,
and Abort once c Tops have been spent.

The monotone mechanism walks a geometric threshold ladder (1+beta)^k:
for each incoming value it keeps raising k while the SVT answers Top,
then releases (1+beta)^k.  With budget c = ceil(log_{1+beta}(r)) the
ladder spans the declared value range [1, r].  With probability at
least 1 - delta every output satisfies

    f(t) - alpha <= o_t <= (1+beta) f(t) + alpha,
    alpha = 16 log_{1+beta}(r) rho ln(2T/delta) / epsilon.

Decreasing statistics on decremental sequences are handled by running
the mechanism over the time-reversed sequence and mapping the outputs
back.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import (
    NonMonotoneInput,
    OutOfRange,
    UnknownRange,
)
from .functions import MONOTONE_FUNCTIONS, GraphFunction, evaluate, static_sensitivity
from .graphs import GraphSequence, SequenceKind
from .noise import RandomSource, sample_laplace


class SvtAnswer(enum.Enum):
    TOP = "top"
    BOTTOM = "bottom"
    ABORT = "abort"


class SparseVector:
    """Above-threshold queries with a budget of c positive answers."""

    def __init__(
        self,
        epsilon: float,
        rho: float,
        c: int,
        rng: RandomSource,
        *,
        noise_off: bool = False,
    ) -> None:
        if epsilon <= 0 or rho <= 0:
            raise OutOfRange("epsilon and rho must be positive")
        if c < 1:
            raise OutOfRange(f"budget c must be >= 1, got {c}")
        self.epsilon = epsilon
        self.rho = rho
        self.c = c
        self.epsilon1 = epsilon / 2.0
        self.epsilon2 = epsilon - self.epsilon1
        self.noise_off = noise_off
        self._rng = rng
        # zeta is drawn once at initialization and never resampled
        self.zeta = 0.0 if noise_off else sample_laplace(rng, rho / self.epsilon1)
        self.count = 0

    @property
    def nu_scale(self) -> float:
        return 2.0 * self.c * self.rho / self.epsilon2

    def query(self, value: float, threshold: float) -> SvtAnswer:
        if self.count >= self.c:
            return SvtAnswer.ABORT
        nu = 0.0 if self.noise_off else sample_laplace(self._rng, self.nu_scale)
        if value + nu >= threshold + self.zeta:
            self.count += 1
            return SvtAnswer.TOP
        return SvtAnswer.BOTTOM


@dataclass
class MonotoneRecord:
    t: int
    true: float
    output: float
    lower_ok: bool
    upper_ok: bool
    alpha: float


@dataclass
class MonotoneReport:
    function: str
    epsilon: float
    beta: float
    delta: float
    r: float
    rho: float
    c: int
    alpha: float
    seed: int
    noise_off: bool
    budget_exhausted: bool = False
    top_count: int = 0
    records: list[MonotoneRecord] = field(default_factory=list)

    @property
    def all_bounds_hold(self) -> bool:
        return all(rec.lower_ok and rec.upper_ok for rec in self.records)


def threshold_budget(beta: float, r: float) -> int:
    """c = ceil(log_{1+beta}(r)); the ladder reaches the range top r."""
    if not 0 < beta <= 1:
        raise OutOfRange(f"beta must be in (0, 1], got {beta}")
    if r < 1:
        raise OutOfRange(f"range r must be >= 1, got {r}")
    val = math.log(r) / math.log(1.0 + beta)
    return max(1, math.ceil(val - 1e-9))


def additive_error(epsilon: float, beta: float, delta: float, r: float, rho: float, T: int) -> float:
    """alpha = 16 log_{1+beta}(r) rho ln(2T/delta) / epsilon."""
    if T < 1:
        raise OutOfRange(f"T must be >= 1, got {T}")
    log_r = math.log(r) / math.log(1.0 + beta)
    return 16.0 * log_r * rho * math.log(2.0 * T / delta) / epsilon


class MonotoneMechanism:
    """Geometric-threshold release for a non-decreasing value stream."""

    def __init__(
        self,
        epsilon: float,
        beta: float,
        r: float,
        rho: float,
        rng: RandomSource,
        *,
        noise_off: bool = False,
    ) -> None:
        self.beta = beta
        self.r = r
        self.c = threshold_budget(beta, r)
        self.svt = SparseVector(epsilon, rho, self.c, rng, noise_off=noise_off)
        self.k = 0
        self.budget_exhausted = False

    def process(self, value: float) -> float:
        """Feed the next value; returns the released (1+beta)^k."""
        while True:
            answer = self.svt.query(value, (1.0 + self.beta) ** self.k)
            if answer is SvtAnswer.TOP:
                self.k += 1
                continue
            if answer is SvtAnswer.ABORT:
                self.budget_exhausted = True
            return (1.0 + self.beta) ** self.k


def monotone_run(
    values,
    epsilon: float,
    beta: float,
    delta: float,
    r: float,
    rho: float,
    rng: RandomSource,
    *,
    function: str = "custom",
    noise_off: bool = False,
) -> MonotoneReport:
    """Run the monotone mechanism over an explicit non-decreasing list."""
    values = [float(v) for v in values]
    for a, b in zip(values, values[1:]):
        if b < a:
            raise NonMonotoneInput(f"values decrease: {a} -> {b}")
    T = max(len(values), 1)
    alpha = additive_error(epsilon, beta, delta, r, rho, T)
    mech = MonotoneMechanism(epsilon, beta, r, rho, rng, noise_off=noise_off)
    report = MonotoneReport(
        function=function,
        epsilon=epsilon,
        beta=beta,
        delta=delta,
        r=r,
        rho=rho,
        c=mech.c,
        alpha=alpha,
        seed=rng.seed,
        noise_off=noise_off,
    )
    for t, v in enumerate(values, start=1):
        out = mech.process(v)
        # values below the ladder base 1 carry no sandwich guarantee
        if v < 1.0:
            lower_ok = upper_ok = True
        else:
            lower_ok = v - alpha <= out
            upper_ok = out <= (1.0 + beta) * v + alpha
        report.records.append(MonotoneRecord(t, v, out, lower_ok, upper_ok, alpha))
    report.budget_exhausted = mech.budget_exhausted
    report.top_count = mech.svt.count
    return report


def default_range(f: GraphFunction, n: int, W: int) -> float:
    """Default value range r: nW for cuts and matchings, n for densest."""
    if f.name in {"min_cut", "st_min_cut", "max_weight_matching",
                  "max_cardinality_matching"}:
        return float(n * W)
    if f.name == "densest_subgraph":
        return float(n)
    raise UnknownRange(f"no default range for {f.name}")


def monotone_release(
    seq: GraphSequence,
    f: GraphFunction,
    epsilon: float,
    beta: float,
    delta: float,
    rng: RandomSource,
    *,
    r: float | None = None,
    rho: float | None = None,
    W: int | None = None,
    noise_off: bool = False,
    true_values=None,
) -> MonotoneReport:
    """Release a monotone statistic along a partially dynamic sequence.

    ``true_values`` may carry precomputed exact values (one per step)
    to avoid re-evaluating expensive statistics across repeated trials.
    Decremental sequences are processed in reverse and the outputs are
    timestamped back.
    """
    if f.name not in MONOTONE_FUNCTIONS:
        raise UnknownRange(f"{f.name} is not released via the monotone mechanism")
    kind = seq.kind
    if kind is SequenceKind.FULLY_DYNAMIC:
        raise NonMonotoneInput("monotone release requires a partially dynamic sequence")
    if W is None:
        W = seq.max_weight()
    if rho is None:
        rho = static_sensitivity(f, W)
    if r is None:
        r = default_range(f, len(seq.node_universe()), W)

    if true_values is None:
        true_values = [float(evaluate(f, g)) for g in seq.iter_graphs()]
    else:
        true_values = [float(v) for v in true_values]
        if len(true_values) != seq.T:
            raise OutOfRange("true_values length must equal T")

    reverse = kind is SequenceKind.DECREMENTAL
    feed = list(reversed(true_values)) if reverse else true_values
    report = monotone_run(
        feed,
        epsilon,
        beta,
        delta,
        r,
        rho,
        rng,
        function=f.label(),
        noise_off=noise_off,
    )
    if reverse:
        recs = report.records
        report.records = [
            MonotoneRecord(len(recs) - rec.t + 1, rec.true, rec.output,
                           rec.lower_ok, rec.upper_ok, rec.alpha)
            for rec in reversed(recs)
        ]
    return report
