# cython: language_level=3
"""Compiled kernel for sparse truncated polynomial arithmetic.

Same contract as _kernel_py: dicts of exponent tuples to nonzero Fraction
coefficients, canonical outputs, inputs never mutated.  lmc.arith picks
this module when it imports, unless LMC_PURE_PYTHON is set.
"""

from fractions import Fraction

KERNEL = "cython"


def padd(dict a, dict b):
    cdef dict out = dict(a)
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


def psub(dict a, dict b):
    cdef dict out = dict(a)
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


def pneg(dict a):
    cdef dict out = {}
    for e, c in a.items():
        out[e] = -c
    return out


def pscale(dict a, s):
    if not s:
        return {}
    cdef dict out = {}
    for e, c in a.items():
        out[e] = c * s
    return out


cdef long _deg(tuple e):
    cdef long d = 0
    cdef Py_ssize_t i
    for i in range(len(e)):
        d += <long> e[i]
    return d


def pmul(dict a, dict b, long cap):
    """Product with all terms of total degree > cap discarded."""
    if not a or not b:
        return {}
    cdef dict out = {}
    cdef list bitems = []
    cdef long da, db
    cdef Py_ssize_t i, n
    cdef tuple ea, eb, e, item
    for eb, cb0 in b.items():
        bitems.append((_deg(eb), eb, cb0))
    bitems.sort()
    for ea, ca in a.items():
        da = _deg(ea)
        n = len(ea)
        for item_obj in bitems:
            item = <tuple> item_obj
            db = <long> item[0]
            if da + db > cap:
                break
            eb = <tuple> item[1]
            cb = item[2]
            e = tuple([<long> ea[i] + <long> eb[i] for i in range(n)])
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


def pmulvar(dict a, long j, long cap):
    """Multiply by the j-th variable (0-based), truncating past cap."""
    cdef dict out = {}
    cdef list le
    cdef tuple e
    for e, c in a.items():
        if _deg(e) + 1 > cap:
            continue
        le = list(e)
        le[j] = <long> le[j] + 1
        out[tuple(le)] = c
    return out


def pdivvar(dict a, long j):
    """Exact division by the j-th variable (0-based), or None."""
    cdef dict out = {}
    cdef list le
    cdef tuple e
    for e, c in a.items():
        if <long> e[j] == 0:
            return None
        le = list(e)
        le[j] = <long> le[j] - 1
        out[tuple(le)] = c
    return out


def pgrade(dict a, long k):
    cdef dict out = {}
    cdef tuple e
    for e, c in a.items():
        if _deg(e) == k:
            out[e] = c
    return out


def ptrunc(dict a, long cap):
    cdef dict out = {}
    cdef tuple e
    for e, c in a.items():
        if _deg(e) <= cap:
            out[e] = c
    return out


def pcanon(a, long cap):
    """Coerce coefficients to Fraction, drop zeros and over-cap terms."""
    cdef dict out = {}
    cdef tuple e
    for e_raw, c_raw in a.items():
        e = tuple([int(x) for x in e_raw])
        if _deg(e) > cap:
            continue
        c = Fraction(c_raw)
        if c:
            out[e] = c
    return out
