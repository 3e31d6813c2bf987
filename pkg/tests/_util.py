"""Shared helpers for the test suite: random bounded-degree elements and
tensor-cube checks."""

import random

from gmpy2 import mpq

from qlie.cartan import WeightVector
from qlie.uq import AlgebraElement, QuantumAlgebra, TensorElement


def random_element(alg: QuantumAlgebra, rng: random.Random,
                   max_terms: int = 2, max_letters: int = 2,
                   torus_halves: bool = True) -> AlgebraElement:
    """Random bounded-degree element with small integer-ish coefficients."""
    out = alg.zero()
    nterms = rng.randint(1, max_terms)
    rank = alg.cartan.rank
    for _ in range(nterms):
        ne = rng.randint(0, max_letters)
        nf = rng.randint(0, max_letters - ne) if max_letters > ne else 0
        eword = tuple(rng.randrange(rank) for _ in range(ne))
        fword = tuple(rng.randrange(rank) for _ in range(nf))
        denom = 2 if torus_halves else 1
        lam = WeightVector([mpq(rng.randint(-denom, denom), denom) for _ in range(rank)])
        coef = alg.ctx.from_int(rng.choice([-2, -1, 1, 2, 3]))
        if rng.random() < 0.5:
            coef = coef * alg.ctx.q_power(rng.randint(-2, 2))
        out = out + alg.monomial(fword, lam, eword).scale(coef)
    return out


def tensor_triple_left(alg: QuantumAlgebra, t: TensorElement) -> dict:
    """(coproduct x id) of a tensor, as a dict keyed by monomial triples."""
    out: dict = {}
    for (a, b), c in t.terms.items():
        for (a1, a2), c1 in alg._mono_coproduct(a).terms.items():
            key = (a1, a2, b)
            acc = out.get(key)
            v = c * c1
            out[key] = v if acc is None else acc + v
    return {k: v for k, v in out.items() if not v.is_zero()}


def tensor_triple_right(alg: QuantumAlgebra, t: TensorElement) -> dict:
    """(id x coproduct) of a tensor, as a dict keyed by monomial triples."""
    out: dict = {}
    for (a, b), c in t.terms.items():
        for (b1, b2), c1 in alg._mono_coproduct(b).terms.items():
            key = (a, b1, b2)
            acc = out.get(key)
            v = c * c1
            out[key] = v if acc is None else acc + v
    return {k: v for k, v in out.items() if not v.is_zero()}
