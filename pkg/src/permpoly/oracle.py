"""Ground-truth exhaustive verification of permutation behavior.

Maps are accepted either as :class:`SparsePoly` or as plain callables on
integer reps, so composition closures verify without formal expansion.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import NotADivisor, NotFactorable
from .field import FieldCtx, FieldElem, SparsePoly


@dataclass
class VerifyReport:
    """Outcome of an exhaustive bijection check.

    ``witness`` is a rep pair (x1, x2), x1 != x2, with equal images when the
    map is not injective; ``escape`` is a rep pair (x, f(x)) when a subset
    map leaves the subset.  ``evaluations`` equals the target size whenever
    the map verifies as a permutation.
    """

    target: str
    is_permutation: bool
    witness: tuple[int, int] | None
    escape: tuple[int, int] | None
    evaluations: int
    elapsed_ms: float


def _as_rep_fn(f):
    if isinstance(f, SparsePoly):
        return f.eval_rep
    return f


def _sequential_scan(fn, order):
    """First-collision scan in ascending rep order."""
    seen = bytearray(order)
    for x in range(order):
        y = fn(x)
        if seen[y]:
            for x1 in range(x):
                if fn(x1) == y:
                    return (x1, x), x + 1
            raise AssertionError("collision vanished on rescan")
        seen[y] = 1
    return None, order


def _parallel_scan(fn, order, workers):
    """Partitioned scan with per-worker marks merged at the end.

    Produces a report identical to the sequential scan: the reconstructed
    witness is the first collision in ascending rep order.
    """
    bounds = [(i * order) // workers for i in range(workers + 1)]
    ranges = [(bounds[i], bounds[i + 1]) for i in range(workers)]

    def run(rng):
        lo, hi = rng
        marks = bytearray(order)
        for x in range(lo, hi):
            marks[fn(x)] += 1
        return marks

    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(run, ranges))

    counts = parts[0]
    for part in parts[1:]:
        for y in range(order):
            counts[y] += part[y]
    dup = [y for y in range(order) if counts[y] > 1]
    if not dup:
        return None, order
    # reconstruct the canonical (sequential) witness: minimal second preimage
    best = None
    for y in dup:
        first = second = None
        for x in range(order):
            if fn(x) == y:
                if first is None:
                    first = x
                else:
                    second = x
                    break
        if best is None or second < best[1]:
            best = (first, second)
    return best, best[1] + 1


def is_permutation(f, ctx: FieldCtx, *, workers: int = 1) -> VerifyReport:
    """Exhaustively test whether f is a bijection of the whole field."""
    fn = _as_rep_fn(f)
    ctx.ensure_tables()
    start = time.perf_counter()
    if workers > 1:
        witness, evals = _parallel_scan(fn, ctx.order, workers)
    else:
        witness, evals = _sequential_scan(fn, ctx.order)
    elapsed = (time.perf_counter() - start) * 1000.0
    return VerifyReport("field", witness is None, witness, None, evals, elapsed)


def permutes_subset(f, subset, ctx: FieldCtx) -> VerifyReport:
    """Test whether f maps ``subset`` into itself bijectively.

    Closure under f is not assumed: an image outside the subset is itself a
    failure, reported through ``escape``.
    """
    fn = _as_rep_fn(f)
    ctx.ensure_tables()
    reps = [s.rep if isinstance(s, FieldElem) else s for s in subset]
    member = set(reps)
    start = time.perf_counter()
    seen = {}
    witness = None
    escape = None
    evals = 0
    for x in reps:
        y = fn(x)
        evals += 1
        if y not in member:
            escape = (x, y)
            break
        if y in seen:
            witness = (seen[y], x)
            break
        seen[y] = x
    elapsed = (time.perf_counter() - start) * 1000.0
    ok = witness is None and escape is None
    if ok:
        evals = len(reps)
    return VerifyReport(f"subset[{len(reps)}]", ok, witness, escape, evals, elapsed)


# ---------------------------------------------------------------------------
# multiplicative-coset (Zieve) splitting: f(x) = x^r * h(x^((q-1)/d))
# ---------------------------------------------------------------------------

def zieve_split(f: SparsePoly, d: int) -> tuple[int, SparsePoly]:
    """Split f as x^r * h(x^t) with t = (q-1)/d.

    r is the minimal exponent of f; every exponent must be congruent to r
    mod t, otherwise :class:`NotFactorable` is raised.
    """
    ctx = f.ctx
    n1 = ctx.order - 1
    if d < 1 or n1 % d:
        raise NotADivisor(f"{d} does not divide {n1}")
    pairs = f.term_pairs()
    if not pairs:
        raise NotFactorable("zero polynomial has no split")
    t = n1 // d
    r = pairs[0][1]
    if t == 1:
        return r, SparsePoly(ctx, [(c, e - r) for c, e in pairs])
    for _, e in pairs:
        if (e - r) % t:
            raise NotFactorable(f"exponents {e} and {r} differ mod {t}")
    return r, SparsePoly(ctx, [(c, (e - r) // t) for c, e in pairs])


def natural_divisor(f: SparsePoly) -> int:
    """Largest-step split divisor: d = (q-1)/gcd(q-1, exponent differences)."""
    n1 = f.ctx.order - 1
    pairs = f.term_pairs()
    if not pairs:
        raise NotFactorable("zero polynomial has no split")
    t = n1
    e0 = pairs[0][1]
    for _, e in pairs[1:]:
        t = math.gcd(t, e - e0)
    return n1 // t if t else 1


def zieve_verdict(f: SparsePoly, d: int | None = None) -> tuple[bool, dict]:
    """Permutation verdict through the two split conditions.

    Returns (verdict, details) where verdict is True iff gcd(r, (q-1)/d) == 1
    and y^r * h(y)^((q-1)/d) permutes the order-d subgroup.  Exponents of h
    are folded mod d for the subgroup sweep, which is exact on that subgroup.
    """
    ctx = f.ctx
    if d is None:
        d = natural_divisor(f)
    r, h = zieve_split(f, d)
    n1 = ctx.order - 1
    t = n1 // d
    coprime = math.gcd(r, t) == 1
    mu = ctx.subgroup_reps(d)
    hr = h.reduce_exponents(d)
    rr = r % d if r % d else (d if r else 0)

    def on_circle(y):
        return ctx.mul(ctx.pow(y, rr), ctx.pow(hr.eval_rep(y), t))

    sub = permutes_subset(on_circle, mu, ctx)
    verdict = coprime and sub.is_permutation
    return verdict, {"d": d, "r": r, "t": t, "coprime": coprime,
                     "subgroup": sub.is_permutation}
