"""Exact scalars and the truncated polynomial ring Q[t_1,...,t_m]/Omega^(d+1).

Rational scalars are stdlib Fraction values: arbitrary-precision integers,
always in lowest terms with positive denominator, exact arithmetic.

TruncPoly is a sparse polynomial in m variables in which every monomial of
total degree > cap is identically zero.  Omega denotes the augmentation
ideal (polynomials without constant term), so the ring is Q[t]/Omega^(cap+1).
Values are immutable; all operations are pure.

The term-map arithmetic is delegated to a kernel selected at import time:
the compiled Cython kernel when available, otherwise the pure-Python one.
Set LMC_PURE_PYTHON=1 to force the fallback.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .errors import DimensionMismatch

if os.environ.get("LMC_PURE_PYTHON"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

KERNEL = _impl.KERNEL

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class TruncPoly:
    """Sparse exact-rational polynomial truncated past total degree `cap`."""

    __slots__ = ("nv", "cap", "terms")

    def __init__(self, nv: int, cap: int, terms=None):
        if nv < 1:
            raise DimensionMismatch(f"need at least one variable, got nv={nv}")
        if cap < 0:
            raise DimensionMismatch(f"cap must be nonnegative, got {cap}")
        object.__setattr__(self, "nv", nv)
        object.__setattr__(self, "cap", cap)
        canon = _impl.pcanon(terms, cap) if terms else {}
        for e in canon:
            if len(e) != nv or any(x < 0 for x in e):
                raise DimensionMismatch(f"bad exponent vector {e} for nv={nv}")
        object.__setattr__(self, "terms", canon)

    # -- construction -----------------------------------------------------

    @classmethod
    def _make(cls, nv: int, cap: int, terms: dict) -> "TruncPoly":
        """Wrap a kernel-produced (already canonical) term map."""
        self = object.__new__(cls)
        object.__setattr__(self, "nv", nv)
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "terms", terms)
        return self

    @classmethod
    def zero(cls, nv: int, cap: int) -> "TruncPoly":
        return cls._make(nv, cap, {})

    @classmethod
    def const(cls, nv: int, cap: int, value) -> "TruncPoly":
        value = Fraction(value)
        if not value:
            return cls.zero(nv, cap)
        return cls._make(nv, cap, {(0,) * nv: value})

    @classmethod
    def var(cls, nv: int, cap: int, j: int) -> "TruncPoly":
        """The variable t_j (1-based index)."""
        if not 1 <= j <= nv:
            raise DimensionMismatch(f"variable index {j} out of range 1..{nv}")
        if cap < 1:
            return cls.zero(nv, cap)
        e = [0] * nv
        e[j - 1] = 1
        return cls._make(nv, cap, {tuple(e): _ONE})

    @classmethod
    def monomial(cls, nv: int, cap: int, exps, coeff=1) -> "TruncPoly":
        return cls(nv, cap, {tuple(exps): Fraction(coeff)})

    def __setattr__(self, name, value):
        raise AttributeError("TruncPoly is immutable")

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "TruncPoly"):
        if self.nv != other.nv or self.cap != other.cap:
            raise DimensionMismatch(
                f"operands disagree: ({self.nv} vars, cap {self.cap}) vs "
                f"({other.nv} vars, cap {other.cap})"
            )

    def __add__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        return TruncPoly._make(self.nv, self.cap, _impl.padd(self.terms, other.terms))

    def __sub__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        return TruncPoly._make(self.nv, self.cap, _impl.psub(self.terms, other.terms))

    def __neg__(self) -> "TruncPoly":
        return TruncPoly._make(self.nv, self.cap, _impl.pneg(self.terms))

    def __mul__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        return TruncPoly._make(
            self.nv, self.cap, _impl.pmul(self.terms, other.terms, self.cap)
        )

    def scale(self, s) -> "TruncPoly":
        return TruncPoly._make(self.nv, self.cap, _impl.pscale(self.terms, Fraction(s)))

    def mul_var(self, j: int) -> "TruncPoly":
        """t_j * self at the same cap (1-based j)."""
        if not 1 <= j <= self.nv:
            raise DimensionMismatch(f"variable index {j} out of range 1..{self.nv}")
        return TruncPoly._make(
            self.nv, self.cap, _impl.pmulvar(self.terms, j - 1, self.cap)
        )

    def divide_var(self, j: int):
        """Exact quotient by t_j with cap one less, or None if not divisible."""
        if not 1 <= j <= self.nv:
            raise DimensionMismatch(f"variable index {j} out of range 1..{self.nv}")
        q = _impl.pdivvar(self.terms, j - 1)
        if q is None:
            return None
        return TruncPoly._make(self.nv, max(self.cap - 1, 0), q)

    def graded(self, k: int) -> "TruncPoly":
        """Homogeneous degree-k component."""
        if not 0 <= k <= self.cap:
            raise DimensionMismatch(f"degree {k} outside 0..{self.cap}")
        return TruncPoly._make(self.nv, self.cap, _impl.pgrade(self.terms, k))

    def split_var(self, j: int):
        """(q, r) with self = t_j * q + r and r free of t_j (same caps)."""
        if not 1 <= j <= self.nv:
            raise DimensionMismatch(f"variable index {j} out of range 1..{self.nv}")
        quo, rem = {}, {}
        for e, c in self.terms.items():
            if e[j - 1]:
                le = list(e)
                le[j - 1] -= 1
                quo[tuple(le)] = c
            else:
                rem[e] = c
        return (
            TruncPoly._make(self.nv, self.cap, quo),
            TruncPoly._make(self.nv, self.cap, rem),
        )

    def with_cap(self, cap: int) -> "TruncPoly":
        """The same polynomial image in Q[t]/Omega^(cap+1)."""
        if cap == self.cap:
            return self
        if cap > self.cap:
            return TruncPoly._make(self.nv, cap, dict(self.terms))
        return TruncPoly._make(self.nv, cap, _impl.ptrunc(self.terms, cap))

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nv, _ZERO)

    def coeff(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), _ZERO)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def support_vars(self) -> frozenset:
        """1-based indices of variables that actually occur."""
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i + 1)
        return frozenset(used)

    def depends_only_on(self, allowed) -> bool:
        return self.support_vars() <= frozenset(allowed)

    def graded_parts(self):
        """All (k, component) pairs with nonzero component, ascending k."""
        by_deg = {}
        for e, c in self.terms.items():
            by_deg.setdefault(sum(e), {})[e] = c
        return [
            (k, TruncPoly._make(self.nv, self.cap, d))
            for k, d in sorted(by_deg.items())
        ]

    # -- equality and display ------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return (
            self.nv == other.nv and self.cap == other.cap and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nv, self.cap, frozenset(self.terms.items())))

    def __str__(self) -> str:
        return poly_str(self)

    def __repr__(self) -> str:
        return f"TruncPoly({self.nv}, {self.cap}, {poly_str(self)!r})"


def all_monomials(nv: int, max_deg: int):
    """Exponent tuples of total degree <= max_deg, in graded order."""

    def rec(rest, budget):
        if rest == 1:
            for d in range(budget + 1):
                yield (d,)
            return
        for d in range(budget + 1):
            for tail in rec(rest - 1, budget - d):
                yield (d,) + tail

    return sorted(rec(nv, max_deg), key=monomial_sort_key)


def monomial_sort_key(e):
    """Graded order, ties broken so that t1 < t2 < ... within a degree."""
    return (sum(e), tuple(-x for x in e))


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _monomial_str(e) -> str:
    parts = []
    for i, x in enumerate(e):
        if x == 1:
            parts.append(f"t{i + 1}")
        elif x > 1:
            parts.append(f"t{i + 1}^{x}")
    return "*".join(parts)


def poly_str(p: TruncPoly) -> str:
    """Canonical text form, e.g. '1/2*t1^2*t3 - t2'; zero prints as '0'."""
    if not p.terms:
        return "0"
    out = []
    for e in sorted(p.terms, key=monomial_sort_key):
        c = p.terms[e]
        mono = _monomial_str(e)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)
