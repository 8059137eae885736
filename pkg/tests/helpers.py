"""Independent reference implementations shared by the test modules.

Everything here deliberately avoids the library's fast paths: evaluation is
repeated multiplication through the table-free ``_mul_raw``, with no exponent
reduction, so oracle equivalence checks exercise two genuinely different
routes.
"""


def naive_eval(ctx, pairs, x):
    """Per-term power-and-sum evaluation; pairs = ((coeff_rep, exp), ...)."""
    total = 0
    for coeff, exp in pairs:
        term = coeff
        for _ in range(exp):
            term = ctx._mul_raw(term, x)
        total = ctx.add(total, term)
    return total


def brute_quad_roots(ctx, u, v):
    """All x with x^2 + u*x + v == 0, by field enumeration."""
    return sorted(x for x in range(ctx.order)
                  if ctx.add(ctx.add(ctx.mul(x, x), ctx.mul(u, x)), v) == 0)


def brute_affine_roots(ctx, a, b, m):
    """All x with x^(2^m) + a*x + b == 0, by field enumeration."""
    Q = 1 << m
    return sorted(x for x in range(ctx.order)
                  if ctx.add(ctx.add(ctx.pow(x, Q), ctx.mul(a, x)), b) == 0)


def linearized_kernel(ctx, a, b, m):
    """All x with a*x + b*x^q + x^(q^2) == 0, q = 2^m."""
    q = 1 << m
    return [x for x in range(ctx.order)
            if ctx.add(ctx.add(ctx.mul(a, x), ctx.mul(b, ctx.pow(x, q))),
                       ctx.pow(x, q * q)) == 0]


def brute_is_permutation(fn, order):
    """Set-cardinality bijection test, independent of the oracle module."""
    return len({fn(x) for x in range(order)}) == order
