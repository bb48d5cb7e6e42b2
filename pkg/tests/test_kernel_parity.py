"""The compiled kernel and the pure-Python fallback must agree exactly."""

import random
from fractions import Fraction as F

import pytest

from lmc import _kernel_py
from lmc.arith import all_monomials

cy = pytest.importorskip("lmc._kernel_cy")


def rand_terms(rnd, nv, cap, bound=5):
    terms = {}
    for e in all_monomials(nv, cap):
        v = rnd.randint(-bound, bound)
        if v:
            terms[e] = F(v, rnd.randint(1, 4))
    return terms


@pytest.mark.parametrize("seed", range(6))
def test_kernels_agree(seed):
    rnd = random.Random(seed)
    for _ in range(25):
        nv = rnd.randint(1, 4)
        cap = rnd.randint(0, 4)
        a = rand_terms(rnd, nv, cap)
        b = rand_terms(rnd, nv, cap)
        j = rnd.randint(0, nv - 1)
        k = rnd.randint(0, cap)
        assert _kernel_py.padd(a, b) == cy.padd(a, b)
        assert _kernel_py.psub(a, b) == cy.psub(a, b)
        assert _kernel_py.pneg(a) == cy.pneg(a)
        assert _kernel_py.pscale(a, F(3, 7)) == cy.pscale(a, F(3, 7))
        assert _kernel_py.pscale(a, F(0)) == cy.pscale(a, F(0))
        assert _kernel_py.pmul(a, b, cap) == cy.pmul(a, b, cap)
        assert _kernel_py.pmulvar(a, j, cap) == cy.pmulvar(a, j, cap)
        assert _kernel_py.pdivvar(a, j) == cy.pdivvar(a, j)
        assert _kernel_py.pgrade(a, k) == cy.pgrade(a, k)
        assert _kernel_py.ptrunc(a, k) == cy.ptrunc(a, k)
        raw = dict(a)
        raw[(9,) * nv] = F(1)  # over-cap entry for pcanon to drop
        raw[(0,) * nv] = F(0)  # zero entry to drop
        assert _kernel_py.pcanon(raw, cap) == cy.pcanon(raw, cap)


def test_kernel_names():
    assert _kernel_py.KERNEL == "python"
    assert cy.KERNEL == "cython"
