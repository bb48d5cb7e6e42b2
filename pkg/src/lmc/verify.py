"""Seeded randomized verification of the group-structure laws.

Each law is an exact endomorphism identity evaluated on independently
sampled tuples; a passing report is a regression tripwire, not evidence
(the laws are theorems).  Laws are guarded by the contexts they are
proved for, so a report can never reflect a vacuous domain:

  abelian            commutators vanish on GInn       c = 2
  nilpotent2         ((a,b),c) = 1 on GInn            c = 3
  metabelian         ((a,b),(c,d)) = 1 on GInn        c >= 4 or (m,c)=(2,2)
  class2_by_abelian  ((c1,c2),c3) = 1, c_i commutators
                     of scaled normal maps            (m,c) = (2,3)
  jacobian_functorial J(phi psi) = J(phi) J(psi) and
                     J(phi^-1) = J(phi)^-1 on IA      any
  ginn_normal_oracle sampled GInn maps preserve
                     sampled principal ideals         any

Sampling is deterministic in (kind, ctx, seed): coefficients are integers
in [-coeff_bound, coeff_bound], and per-trial seeds are derived from the
trial index, so reports are reproducible and trials independent.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import endo as _endo
from . import liealg, normal, syntax
from .arith import TruncPoly, all_monomials
from .errors import UsageError
from .liealg import Context

_ZERO = Fraction(0)

LAW_NAMES = (
    "abelian",
    "nilpotent2",
    "metabelian",
    "class2_by_abelian",
    "jacobian_functorial",
    "ginn_normal_oracle",
)

SAMPLE_KINDS = ("element", "ginn", "ia", "normal_scaled", "inner")


@dataclass
class LawReport:
    law: str
    m: int
    c: int
    requested: int
    passed: int
    counterexample: str | None
    seed: int
    elapsed: float

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_dict(self) -> dict:
        return {
            "law": self.law,
            "m": self.m,
            "c": self.c,
            "trials_requested": self.requested,
            "trials_passed": self.passed,
            "counterexample": self.counterexample,
            "seed": self.seed,
            "elapsed_seconds": round(self.elapsed, 6),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _rng(kind: str, ctx: Context, seed) -> random.Random:
    return random.Random(f"{kind}:{ctx.m}:{ctx.c}:{seed}")


def sample(kind: str, ctx: Context, seed, coeff_bound: int = 3):
    """Deterministic pseudo-random object of the requested kind."""
    if coeff_bound < 1:
        raise UsageError("coeff_bound must be >= 1")
    rnd = _rng(kind, ctx, seed)
    if kind == "element":
        return _sample_element(ctx, rnd, coeff_bound)
    if kind == "ginn":
        return _sample_ginn(ctx, rnd, coeff_bound)
    if kind == "ia":
        return _sample_ia(ctx, rnd, coeff_bound)
    if kind == "inner":
        return _endo.exp_ad(_sample_element(ctx, rnd, coeff_bound))
    if kind == "normal_scaled":
        if ctx.c >= 2 and (ctx.m, ctx.c) not in ((2, 2), (2, 3)):
            raise UsageError(
                f"scaled normal automorphisms do not exist on L_{{{ctx.m},{ctx.c}}}"
            )
        num = rnd.choice([k for k in range(-coeff_bound, coeff_bound + 1) if k])
        den = rnd.randint(1, coeff_bound)
        return normal.NormalAut(Fraction(num, den), _sample_ginn(ctx, rnd, coeff_bound))
    raise UsageError(f"unknown sample kind {kind!r}")


def _sample_element(ctx, rnd, bound):
    beta = tuple(Fraction(rnd.randint(-bound, bound)) for _ in range(ctx.m))
    comm = {}
    for k in range(2, ctx.c + 1):
        for tup in liealg.enumerate_basis(ctx, k):
            v = rnd.randint(-bound, bound)
            if v:
                comm[tup] = Fraction(v)
    return liealg.from_basis(liealg.BasisForm(ctx, beta, comm))


def _sample_ginn(ctx, rnd, bound):
    if ctx.c == 1:
        return normal.GInnAut.identity(ctx)
    fs = []
    for _ in range(ctx.m):
        terms = {}
        for e in all_monomials(ctx.m, ctx.param_cap):
            v = rnd.randint(-bound, bound)
            if v:
                terms[e] = Fraction(v)
        fs.append(TruncPoly(ctx.m, ctx.param_cap, terms))
    return normal.GInnAut(ctx, tuple(fs))


def _sample_ia(ctx, rnd, bound):
    images = []
    for j in range(1, ctx.m + 1):
        comm = {}
        for k in range(2, ctx.c + 1):
            for tup in liealg.enumerate_basis(ctx, k):
                v = rnd.randint(-bound, bound)
                if v:
                    comm[tup] = Fraction(v)
        w = liealg.from_basis(liealg.BasisForm(ctx, (_ZERO,) * ctx.m, comm))
        images.append(liealg.generator(ctx, j) + w)
    return _endo.Endomorphism(ctx, tuple(images))


# -- law evaluation --------------------------------------------------------------


def _describe(*objs) -> str:
    parts = []
    for obj in objs:
        if isinstance(obj, normal.GInnAut):
            parts.append({"ginn_f": [str(p) for p in obj.f]})
        elif isinstance(obj, normal.NormalAut):
            parts.append(
                {"alpha": str(obj.alpha), "ginn_f": [str(p) for p in obj.g.f]}
            )
        elif isinstance(obj, _endo.Endomorphism):
            parts.append(syntax.automorphism_dict(obj))
        else:
            parts.append(repr(obj))
    return json.dumps(parts)


def _law_abelian(ctx, seeds, bound):
    a = normal.ginn_to_endo(sample("ginn", ctx, seeds(0), bound))
    b = normal.ginn_to_endo(sample("ginn", ctx, seeds(1), bound))
    ok = _endo.group_commutator(a, b) == _endo.Endomorphism.identity(ctx)
    return ok, (a, b)


def _law_nilpotent2(ctx, seeds, bound):
    a, b, c = (
        normal.ginn_to_endo(sample("ginn", ctx, seeds(k), bound)) for k in range(3)
    )
    inner = _endo.group_commutator(a, b)
    ok = _endo.group_commutator(inner, c) == _endo.Endomorphism.identity(ctx)
    return ok, (a, b, c)


def _law_metabelian(ctx, seeds, bound):
    a, b, c, d = (
        normal.ginn_to_endo(sample("ginn", ctx, seeds(k), bound)) for k in range(4)
    )
    lhs = _endo.group_commutator(
        _endo.group_commutator(a, b), _endo.group_commutator(c, d)
    )
    ok = lhs == _endo.Endomorphism.identity(ctx)
    return ok, (a, b, c, d)


def _law_class2_by_abelian(ctx, seeds, bound):
    ns = [sample("normal_scaled", ctx, seeds(k), bound).to_endo() for k in range(6)]
    c1 = _endo.group_commutator(ns[0], ns[1])
    c2 = _endo.group_commutator(ns[2], ns[3])
    c3 = _endo.group_commutator(ns[4], ns[5])
    ok = (
        _endo.group_commutator(_endo.group_commutator(c1, c2), c3)
        == _endo.Endomorphism.identity(ctx)
    )
    return ok, tuple(ns)


def _law_jacobian_functorial(ctx, seeds, bound):
    phi = sample("ia", ctx, seeds(0), bound)
    psi = sample("ia", ctx, seeds(1), bound)
    ok = _endo.jacobian(_endo.compose(phi, psi)) == _endo.jacobian(phi) @ _endo.jacobian(psi)
    ok = ok and _endo.jacobian(_endo.invert(phi)) == _endo.jacobian(phi).neumann_inverse()
    return ok, (phi, psi)


def _law_ginn_normal_oracle(ctx, seeds, bound):
    g = sample("ginn", ctx, seeds(0), bound)
    u = sample("element", ctx, seeds(1), bound)
    ok = normal.preserves_ideal(normal.ginn_to_endo(g), [u])
    return ok, (g, u)


_LAWS = {
    "abelian": _law_abelian,
    "nilpotent2": _law_nilpotent2,
    "metabelian": _law_metabelian,
    "class2_by_abelian": _law_class2_by_abelian,
    "jacobian_functorial": _law_jacobian_functorial,
    "ginn_normal_oracle": _law_ginn_normal_oracle,
}


def check_law(
    law: str, ctx: Context, trials: int, seed: int, coeff_bound: int = 3
) -> LawReport:
    """Run `trials` independent seeded evaluations of the named law."""
    if law not in _LAWS:
        raise UsageError(f"unknown law {law!r}; choose from {', '.join(LAW_NAMES)}")
    if trials < 1:
        raise UsageError("trials must be >= 1")
    normal.check_law_guard(law, ctx)
    evaluate = _LAWS[law]
    started = time.perf_counter()
    passed = 0
    counterexample = None
    for t in range(trials):
        seeds = lambda slot: f"{law}:{seed}:{t}:{slot}"
        ok, inputs = evaluate(ctx, seeds, coeff_bound)
        if ok:
            passed += 1
        else:
            counterexample = _describe(*inputs)
            break
    return LawReport(
        law=law,
        m=ctx.m,
        c=ctx.c,
        requested=trials,
        passed=passed,
        counterexample=counterexample,
        seed=seed,
        elapsed=time.perf_counter() - started,
    )
