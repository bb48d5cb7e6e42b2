"""Pure-Python kernel for sparse truncated polynomial arithmetic.

A polynomial is a dict mapping exponent tuples (one int per variable) to
nonzero Fraction coefficients.  Every function returns a canonical dict:
no zero coefficients, and, where a cap applies, no term of total degree
beyond it.  Inputs are never mutated.

The compiled kernel in _kernel_cy.pyx implements the same contract; the
active implementation is selected once, at import of lmc.arith.
"""

from fractions import Fraction

KERNEL = "python"


def padd(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v = v + c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def psub(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e)
        if v is None:
            out[e] = -c
        else:
            v = v - c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def pneg(a):
    return {e: -c for e, c in a.items()}


def pscale(a, s):
    if not s:
        return {}
    return {e: c * s for e, c in a.items()}


def pmul(a, b, cap):
    """Product with all terms of total degree > cap discarded."""
    if not a or not b:
        return {}
    out = {}
    bitems = sorted(((sum(e), e, c) for e, c in b.items()))
    for ea, ca in a.items():
        da = sum(ea)
        for db, eb, cb in bitems:
            if da + db > cap:
                break
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e)
            if v is None:
                out[e] = ca * cb
            else:
                v = v + ca * cb
                if v:
                    out[e] = v
                else:
                    del out[e]
    return out


def pmulvar(a, j, cap):
    """Multiply by the j-th variable (0-based), truncating past cap."""
    out = {}
    for e, c in a.items():
        if sum(e) + 1 > cap:
            continue
        le = list(e)
        le[j] += 1
        out[tuple(le)] = c
    return out


def pdivvar(a, j):
    """Exact division by the j-th variable (0-based), or None."""
    out = {}
    for e, c in a.items():
        if e[j] == 0:
            return None
        le = list(e)
        le[j] -= 1
        out[tuple(le)] = c
    return out


def pgrade(a, k):
    return {e: c for e, c in a.items() if sum(e) == k}


def ptrunc(a, cap):
    return {e: c for e, c in a.items() if sum(e) <= cap}


def pcanon(a, cap):
    """Coerce coefficients to Fraction, drop zeros and over-cap terms."""
    out = {}
    for e, c in a.items():
        if sum(e) > cap:
            continue
        c = Fraction(c)
        if c:
            out[tuple(int(x) for x in e)] = c
    return out
