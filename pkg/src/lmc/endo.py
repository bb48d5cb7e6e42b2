"""Endomorphisms and automorphisms of L_{m,c}.

Composition convention, used repo-wide: compose(phi, psi) applies psi
first, compose(phi, psi)(x) = phi(psi(x)).  With this convention the
Jacobian map is multiplicative, jacobian(compose(phi, psi)) =
jacobian(phi) @ jacobian(psi), and matches the juxtaposition order of
the worked identities this package reproduces.

Jacobian entries live in Q[t]/Omega^c (cap c-1); entry (i, j) is the full
a_i-coordinate of the image of x_j.  IA maps (identity modulo the derived
algebra) correspond exactly to matrices I + S where every column of S
satisfies sum_i t_i s_ij = 0 modulo Omega^(c+1); on that subsemigroup the
Jacobian is a faithful semigroup isomorphism, which is what makes the
Neumann-series inverse below exact.
"""

from __future__ import annotations

from fractions import Fraction

from . import liealg
from .arith import TruncPoly
from .errors import ContextMismatch, DomainError, ValidationError
from .liealg import Context, LieElement
from .linalg import mat_inv

_ZERO = Fraction(0)
_ONE = Fraction(1)


class JacobianMatrix:
    """m x m matrix of truncated polynomials at cap c-1."""

    __slots__ = ("ctx", "rows")

    def __init__(self, ctx: Context, rows):
        rows = tuple(tuple(row) for row in rows)
        if len(rows) != ctx.m or any(len(r) != ctx.m for r in rows):
            raise ValidationError(f"need an {ctx.m}x{ctx.m} matrix")
        for row in rows:
            for p in row:
                if p.nv != ctx.m or p.cap != ctx.module_cap:
                    raise ValidationError(
                        f"entries must have {ctx.m} vars and cap {ctx.module_cap}"
                    )
        self.ctx = ctx
        self.rows = rows

    @classmethod
    def identity(cls, ctx: Context) -> "JacobianMatrix":
        one = TruncPoly.const(ctx.m, ctx.module_cap, 1)
        zero = TruncPoly.zero(ctx.m, ctx.module_cap)
        return cls(
            ctx,
            tuple(
                tuple(one if i == j else zero for j in range(ctx.m))
                for i in range(ctx.m)
            ),
        )

    def __matmul__(self, other: "JacobianMatrix") -> "JacobianMatrix":
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
        m = self.ctx.m
        rows = []
        for i in range(m):
            row = []
            for j in range(m):
                acc = TruncPoly.zero(m, self.ctx.module_cap)
                for s in range(m):
                    acc = acc + self.rows[i][s] * other.rows[s][j]
                row.append(acc)
            rows.append(tuple(row))
        return JacobianMatrix(self.ctx, tuple(rows))

    def __sub__(self, other: "JacobianMatrix") -> "JacobianMatrix":
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
        return JacobianMatrix(
            self.ctx,
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
        )

    def __eq__(self, other):
        if not isinstance(other, JacobianMatrix):
            return NotImplemented
        return self.ctx == other.ctx and self.rows == other.rows

    def __hash__(self):
        return hash((self.ctx, self.rows))

    def constant_matrix(self):
        return [[p.constant_term() for p in row] for row in self.rows]

    def is_unipotent(self) -> bool:
        """Constant part equal to the identity matrix."""
        for i, row in enumerate(self.rows):
            for j, p in enumerate(row):
                if p.constant_term() != (_ONE if i == j else _ZERO):
                    return False
        return True

    def column_defect(self, j: int) -> TruncPoly:
        """sum_i t_i * (self - I)[i][j] at cap c (1-based column j)."""
        ctx = self.ctx
        acc = TruncPoly.zero(ctx.m, ctx.c)
        for i in range(1, ctx.m + 1):
            entry = self.rows[i - 1][j - 1]
            if i == j:
                entry = entry - TruncPoly.const(ctx.m, ctx.module_cap, 1)
            acc = acc + entry.with_cap(ctx.c).mul_var(i)
        return acc

    def satisfies_s_condition(self) -> bool:
        """Unipotent with every column of J - I summing to zero against t."""
        if not self.is_unipotent():
            return False
        return all(
            self.column_defect(j).is_zero() for j in range(1, self.ctx.m + 1)
        )

    def neumann_inverse(self) -> "JacobianMatrix":
        """Exact inverse of a unipotent matrix: sum of powers of I - J."""
        if not self.is_unipotent():
            raise DomainError("Neumann inverse needs a unipotent matrix")
        ident = JacobianMatrix.identity(self.ctx)
        minus_n = ident - self  # entries in Omega, nilpotent
        acc = ident
        power = ident
        for _ in range(1, self.ctx.c):
            power = power @ minus_n
            acc = acc + power
        return acc

    def __add__(self, other: "JacobianMatrix") -> "JacobianMatrix":
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
        return JacobianMatrix(
            self.ctx,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
        )

    def __repr__(self):
        body = "; ".join(
            "[" + ", ".join(str(p) for p in row) + "]" for row in self.rows
        )
        return f"JacobianMatrix(m={self.ctx.m}, c={self.ctx.c}, {body})"


class Endomorphism:
    """Endomorphism of L_{m,c} given by the images of the generators."""

    __slots__ = ("ctx", "images", "inner_generator", "_cache")

    def __init__(self, ctx: Context, images, inner_generator=None):
        images = tuple(images)
        if len(images) != ctx.m:
            raise ValidationError(f"need {ctx.m} generator images")
        for im in images:
            if im.ctx != ctx:
                raise ContextMismatch("image context differs from the map context")
        self.ctx = ctx
        self.images = images
        self.inner_generator = inner_generator  # set for exp_ad results
        self._cache = {}

    @classmethod
    def identity(cls, ctx: Context) -> "Endomorphism":
        return cls(ctx, tuple(liealg.generator(ctx, i) for i in range(1, ctx.m + 1)))

    def __eq__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.ctx == other.ctx and self.images == other.images

    def __hash__(self):
        return hash((self.ctx, self.images))

    def __repr__(self):
        return f"Endomorphism(m={self.ctx.m}, c={self.ctx.c}, {self.images!r})"

    # -- cached structure ----------------------------------------------------

    def linear_matrix(self):
        """A with A[k][i] = coefficient of x_{k+1} in the image of x_{i+1}."""
        a = self._cache.get("linear")
        if a is None:
            m = self.ctx.m
            a = [[self.images[i].beta[k] for i in range(m)] for k in range(m)]
            self._cache["linear"] = a
        return a

    def _linear_inverse(self):
        if "linear_inv" not in self._cache:
            self._cache["linear_inv"] = mat_inv(self.linear_matrix())
        return self._cache["linear_inv"]

    def is_ia(self) -> bool:
        a = self.linear_matrix()
        m = self.ctx.m
        return all(
            a[k][i] == (_ONE if k == i else _ZERO) for k in range(m) for i in range(m)
        )

    def is_automorphism(self) -> bool:
        return self._linear_inverse() is not None

    def is_identity(self) -> bool:
        return self == Endomorphism.identity(self.ctx)

    def _substituted_var(self, r: int) -> TruncPoly:
        """Image of t_r under the induced substitution on the module ring."""
        subs = self._cache.get("subs")
        if subs is None:
            subs = {}
            self._cache["subs"] = subs
        p = subs.get(r)
        if p is None:
            a = self.linear_matrix()
            terms = {}
            for k in range(self.ctx.m):
                coeff = a[k][r - 1]
                if coeff:
                    e = [0] * self.ctx.m
                    e[k] = 1
                    terms[tuple(e)] = coeff
            p = TruncPoly(self.ctx.m, self.ctx.module_cap, terms)
            subs[r] = p
        return p

    def _pair_bracket(self, i: int, j: int) -> LieElement:
        pairs = self._cache.get("pairs")
        if pairs is None:
            pairs = {}
            self._cache["pairs"] = pairs
        w = pairs.get((i, j))
        if w is None:
            w = liealg.bracket(self.images[i - 1], self.images[j - 1])
            pairs[(i, j)] = w
        return w

    # -- action ------------------------------------------------------------------

    def apply(self, u: LieElement) -> LieElement:
        """Image of u: expand u over the left-normed basis and push through.

        A basis commutator [x_{i1},...,x_{ik}] maps to the bracket of the
        two leading images acted on by the product of substituted linear
        forms for the remaining letters (the ad operators commute on the
        derived algebra).
        """
        if u.ctx != self.ctx:
            raise ContextMismatch(f"{u.ctx} vs {self.ctx}")
        bf = liealg.to_basis(u)
        acc = liealg.zero(self.ctx)
        for i, coeff in enumerate(bf.linear, start=1):
            if coeff:
                acc = acc + self.images[i - 1].scale(coeff)
        if bf.comm:
            ia = self.is_ia()
            grouped = {}
            for tup, coeff in bf.comm.items():
                if ia:
                    exps = [0] * self.ctx.m
                    for r in tup[2:]:
                        exps[r - 1] += 1
                    q = TruncPoly(
                        self.ctx.m, self.ctx.module_cap, {tuple(exps): coeff}
                    )
                else:
                    q = TruncPoly.const(self.ctx.m, self.ctx.module_cap, coeff)
                    for r in tup[2:]:
                        q = q * self._substituted_var(r)
                key = (tup[0], tup[1])
                grouped[key] = grouped.get(key, None)
                grouped[key] = q if grouped[key] is None else grouped[key] + q
            for (i, j), q in grouped.items():
                if not q.is_zero():
                    acc = acc + liealg.ad_polynomial_action(self._pair_bracket(i, j), q)
        return acc


def compose(phi: Endomorphism, psi: Endomorphism) -> Endomorphism:
    """phi after psi: compose(phi, psi)(x) = phi(psi(x))."""
    if phi.ctx != psi.ctx:
        raise ContextMismatch(f"{phi.ctx} vs {psi.ctx}")
    return Endomorphism(phi.ctx, tuple(phi.apply(im) for im in psi.images))


def jacobian(phi: Endomorphism) -> JacobianMatrix:
    """Partial-derivative matrix: entry (i, j) reads the a_i coordinate of
    the image of x_j, constant term included."""
    ctx = phi.ctx
    rows = []
    for i in range(1, ctx.m + 1):
        rows.append(tuple(phi.images[j - 1].full_poly(i) for j in range(1, ctx.m + 1)))
    return JacobianMatrix(ctx, tuple(rows))


def ia_from_jacobian(jac: JacobianMatrix) -> Endomorphism:
    """Inverse of `jacobian` on IA maps; validates the I + S form."""
    ctx = jac.ctx
    if not jac.is_unipotent():
        raise ValidationError("jacobian must have identity constant part")
    for j in range(1, ctx.m + 1):
        if not jac.column_defect(j).is_zero():
            raise ValidationError(
                f"column {j} violates the S-condition sum_i t_i*s_ij = 0"
            )
    one = TruncPoly.const(ctx.m, ctx.module_cap, 1)
    images = []
    for j in range(1, ctx.m + 1):
        beta = tuple(_ONE if i == j else _ZERO for i in range(1, ctx.m + 1))
        mod = tuple(
            jac.rows[i - 1][j - 1] - one if i == j else jac.rows[i - 1][j - 1]
            for i in range(1, ctx.m + 1)
        )
        images.append(LieElement(ctx, beta, mod))
    return Endomorphism(ctx, tuple(images))


def exp_ad(u: LieElement) -> Endomorphism:
    """The inner automorphism exp(ad u) = 1 + ad u + ... + ad^(c-1) u/(c-1)!."""
    ctx = u.ctx
    images = []
    for i in range(1, ctx.m + 1):
        acc = liealg.generator(ctx, i)
        term = acc
        for k in range(1, ctx.c):
            term = liealg.bracket(term, u).scale(Fraction(1, k))
            if term.is_zero():
                break
            acc = acc + term
        images.append(acc)
    return Endomorphism(ctx, tuple(images), inner_generator=u)


def linear_endo(ctx: Context, a) -> Endomorphism:
    """Multiplicative extension of the linear map with matrix a (columns are
    generator images)."""
    zp = ctx.zero_poly()
    images = []
    for i in range(ctx.m):
        beta = tuple(Fraction(a[k][i]) for k in range(ctx.m))
        images.append(LieElement(ctx, beta, (zp,) * ctx.m))
    return Endomorphism(ctx, tuple(images))


def decompose(phi: Endomorphism):
    """Split an automorphism as (linear part A, IA part chi) with
    phi = linear_endo(A) after chi."""
    if not phi.is_automorphism():
        raise DomainError("decompose needs an automorphism (invertible linear part)")
    a = phi.linear_matrix()
    a_inv = phi._linear_inverse()
    chi = compose(linear_endo(phi.ctx, a_inv), phi)
    return a, chi


def invert(phi: Endomorphism) -> Endomorphism:
    """Exact two-sided inverse of an automorphism."""
    if not phi.is_automorphism():
        raise DomainError("invert needs an automorphism (invertible linear part)")
    if phi.is_ia():
        return ia_from_jacobian(jacobian(phi).neumann_inverse())
    a, chi = decompose(phi)
    a_inv = mat_inv(a)
    return compose(invert(chi), linear_endo(phi.ctx, a_inv))


def group_commutator(phi: Endomorphism, psi: Endomorphism) -> Endomorphism:
    """phi^-1 psi^-1 phi psi under the repo composition order (psi first)."""
    return compose(compose(compose(invert(phi), invert(psi)), phi), psi)
