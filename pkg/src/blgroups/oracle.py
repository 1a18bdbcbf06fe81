"""Independent verification of constants by direct maximization of the form.

Three routes, none of which touches the subgroup formula:

  * exact evaluation of the multilinear form and its Rayleigh quotient;
  * monotone block-coordinate ascent, where each block update is the exact
    Hoelder-dual maximizer (power update for 1 < p < inf, mass concentration
    for p = 1, constants for p = inf), so the sweep objective never
    decreases and subgroup indicators are fixed points;
  * exhaustive search over all nonzero indicator inputs, which is an exact
    maximum because extremizers are subgroup indicators.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .constant import extremizer
from .datum import BLDatum
from .exact import ExactValue, exact_max
from .groups import haar_weight


class BudgetError(ValueError):
    """The requested enumeration exceeds the configured budget."""


class NumericError(ArithmeticError):
    """A non-finite intermediate appeared during ascent."""


@dataclass
class InputTuple:
    """One nonnegative vector per codomain, indexed by element."""

    functions: list[list]

    def __post_init__(self):
        if any(v < 0 for f in self.functions for v in f):
            raise ValueError("inputs must be nonnegative")
        if all(not any(f) for f in self.functions):
            raise ValueError("at least one input must be nonzero")


@dataclass
class AscentTrace:
    values: list[float]
    iterations: int
    converged: bool


def evaluate_form(d: BLDatum, t: InputTuple):
    """sum_x w(x) prod_j f_j(sigma_j(x)); exact when the inputs are rational."""
    for j, f in enumerate(t.functions):
        if len(f) != d.codomains[j].order:
            raise ValueError(f"input {j} has length {len(f)}, expected "
                             f"{d.codomains[j].order}")
    w = haar_weight(d.G, d.haar_G)
    maps = [h.map for h in d.maps]
    total = 0
    for x in range(d.G.order):
        prod = w
        for f, m in zip(t.functions, maps):
            prod *= f[m[x]]
            if not prod:
                break
        total += prod
    return total


def lp_norm(d: BLDatum, j: int, f: Sequence) -> float:
    """The p_j-norm of f on codomain j, weighted by its Haar mode."""
    p = d.exponents[j]
    if p.is_infinite:
        return max(abs(float(v)) for v in f)
    w = float(haar_weight(d.codomains[j], d.haar_codomains[j]))
    pv = float(p.value)
    return (sum(w * abs(float(v)) ** pv for v in f)) ** (1.0 / pv)


def rayleigh(d: BLDatum, t: InputTuple) -> float:
    """Form value divided by the product of input norms; scale invariant."""
    norms = [lp_norm(d, j, f) for j, f in enumerate(t.functions)]
    if any(n == 0 for n in norms):
        raise ValueError("all inputs must have positive norm")
    return float(evaluate_form(d, t)) / math.prod(norms)


def _update_block(d: BLDatum, funcs: list[list[float]], k: int) -> list[float]:
    """Exact maximizer of the form over f_k with its p_k-norm fixed."""
    w = float(haar_weight(d.G, d.haar_G))
    maps = [h.map for h in d.maps]
    size = d.codomains[k].order
    wk = [0.0] * size
    for x in range(d.G.order):
        prod = w
        for j, f in enumerate(funcs):
            if j == k:
                continue
            prod *= f[maps[j][x]]
            if prod == 0.0:
                break
        if prod:
            wk[maps[k][x]] += prod
    p = d.exponents[k]
    if p.is_infinite:
        return [1.0] * size
    if p.value == 1:
        top = max(wk)
        if top <= 0.0:
            return [1.0] * size
        arg = [1.0 if v >= top else 0.0 for v in wk]
        share = sum(arg)
        return [v / share for v in arg]
    q = 1.0 / (float(p.value) - 1.0)
    return [v**q for v in wk]


def alternating_ascent(
    d: BLDatum,
    init: InputTuple,
    tol: float = 1e-12,
    max_sweeps: int = 10_000,
) -> tuple[float, InputTuple, AscentTrace]:
    """Block-coordinate ascent on the Rayleigh quotient.

    Each sweep maximizes over every block in turn; the trace of sweep values
    is nondecreasing up to renormalization jitter.  Inputs are renormalized
    each sweep to unit norm to avoid overflow.
    """
    funcs = [[float(v) for v in f] for f in init.functions]
    for j in range(d.J):
        n = lp_norm(d, j, funcs[j])
        if n == 0:
            raise ValueError(f"input {j} has zero norm")
        funcs[j] = [v / n for v in funcs[j]]
    values: list[float] = []
    converged = False
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        for k in range(d.J):
            funcs[k] = _update_block(d, funcs, k)
            n = lp_norm(d, k, funcs[k])
            if n == 0 or not math.isfinite(n):
                raise NumericError(f"block {k} degenerated during sweep {sweeps}")
            funcs[k] = [v / n for v in funcs[k]]
        value = rayleigh(d, InputTuple(funcs))
        if not math.isfinite(value):
            raise NumericError(f"non-finite objective in sweep {sweeps}")
        values.append(value)
        if len(values) >= 2:
            prev = values[-2]
            if value - prev <= tol * max(abs(value), 1e-300):
                converged = True
                break
    return values[-1], InputTuple(funcs), AscentTrace(values, sweeps, converged)


def oracle_constant(
    d: BLDatum,
    restarts: int = 8,
    seed: int = 0,
    tol: float = 1e-12,
    max_sweeps: int = 10_000,
) -> float:
    """Best ascent value over random positive restarts plus an extremizer seed."""
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if d.J == 0:
        return float(haar_weight(d.G, d.haar_G)) * d.G.order
    rng = random.Random(seed)
    best = -math.inf
    seeds = [
        InputTuple([[float(v) for v in f] for f in extremizer(d)])
    ]
    for _ in range(restarts):
        seeds.append(
            InputTuple(
                [
                    [0.05 + rng.random() for _ in range(c.order)]
                    for c in d.codomains
                ]
            )
        )
    for t in seeds:
        value, _, _ = alternating_ascent(d, t, tol, max_sweeps)
        best = max(best, value)
    return best


def exhaustive_indicator_search(
    d: BLDatum, budget: int = 2**24
) -> tuple[ExactValue, list[tuple[int, ...]]]:
    """Exact maximum of the Rayleigh quotient over nonzero indicator inputs.

    Subsets are enumerated as bitmasks per codomain; the intersection count
    behind the numerator is a popcount of AND-ed fiber masks.  A float
    prefilter keeps the exact comparisons to the near-maximal candidates.
    """
    if d.J == 0:
        total = haar_weight(d.G, d.haar_G) * d.G.order
        return ExactValue.from_rational(total), []
    work = 1
    for c in d.codomains:
        work *= 2**c.order
        if work > budget:
            raise BudgetError(
                f"indicator search needs {work}+ tuples, budget {budget}; "
                "use the subgroup formula instead"
            )

    # fiber masks: for codomain element y, the set of x with sigma_j(x) = y
    fibers = []
    for h in d.maps:
        masks = [0] * h.codomain.order
        for x in range(d.G.order):
            masks[h.map[x]] |= 1 << x
        fibers.append(masks)

    # union masks for every subset of every codomain, by lowest-bit recursion
    subset_masks = []
    for j, c in enumerate(d.codomains):
        arr = [0] * (2**c.order)
        for s in range(1, 2**c.order):
            low = s & -s
            arr[s] = arr[s ^ low] | fibers[j][low.bit_length() - 1]
        subset_masks.append(arr)

    w_G = haar_weight(d.G, d.haar_G)
    recips = [p.reciprocal() for p in d.exponents]
    log_w = []
    for j, c in enumerate(d.codomains):
        log_w.append(math.log(float(haar_weight(c, d.haar_codomains[j]))))

    best_log = -math.inf
    margin = 1e-9
    near: list[tuple[float, tuple[int, ...], int]] = []
    sizes = [2**c.order for c in d.codomains]

    def scan(j: int, mask: int, chosen: tuple[int, ...], log_den: float):
        nonlocal best_log, near
        if j == d.J:
            count = mask.bit_count()
            if count == 0:
                return
            log_val = math.log(count * float(w_G)) - log_den
            if log_val < best_log - margin:
                return
            if log_val > best_log:
                best_log = log_val
                near = [c for c in near if c[0] >= best_log - margin]
            near.append((log_val, chosen, count))
            return
        rj = recips[j]
        for s in range(1, sizes[j]):
            m = mask & subset_masks[j][s]
            if not m:
                continue
            extra = 0.0
            if rj:
                extra = float(rj) * (math.log(s.bit_count()) + log_w[j])
            scan(j + 1, m, chosen + (s,), log_den + extra)

    scan(0, (1 << d.G.order) - 1, (), 0.0)
    if not near:
        raise ValueError("no nonzero indicator tuple found")

    finalists = [(c, cnt) for lv, c, cnt in near if lv >= best_log - margin]
    exact_values = []
    for chosen, count in finalists:
        v = ExactValue.from_rational(count * w_G)
        for j, s in enumerate(chosen):
            if recips[j]:
                mass = Fraction(s.bit_count()) * haar_weight(
                    d.codomains[j], d.haar_codomains[j]
                )
                v = v / ExactValue.from_rational(mass) ** recips[j]
        exact_values.append(v)
    best, value, _ = exact_max(exact_values)
    chosen = finalists[best][0]
    argmax_sets = [
        tuple(y for y in range(d.codomains[j].order) if s >> y & 1)
        for j, s in enumerate(chosen)
    ]
    return value, argmax_sets
