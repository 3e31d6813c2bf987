"""The quantized enveloping algebra with exact PBW-normal-form arithmetic.

Elements are finite linear combinations of normal-ordered monomials

    (lowering word) * (torus element k_lambda) * (raising word)

with scalar coefficients.  Raising and lowering words are kept in canonical
coordinates of the per-weight quotient by the quantum Serre relations; the
quotient bases are computed once by exact linear algebra and cached.

Torus elements k_lambda are indexed by rational weight vectors lambda (the
simply-connected rational form is needed: third-of-root-lattice exponents
occur for a2, halves everywhere through the coproduct).  The Cartan
generators h_i are not stored: their adjoint action is weight extraction,
and they enter products only through k_lambda.

The two adjoint actions are

    x o y   =  sum x_(1) y S(x_(2))        (the bracket action)
    x * y   =  sum x_(2) y S^(-1)(x_(1))   (the companion action)

with the coproduct legs computed per monomial and cached.
"""

from __future__ import annotations

import os
from typing import Iterator, NamedTuple

from gmpy2 import mpq

from .cartan import CartanData, WeightVector
from .errors import ContextMismatchError, DegreeCapError, QlieError
from .linalg import Matrix, rref
from .scalars import Scalar, ScalarContext


class PBWMonomial(NamedTuple):
    f_word: tuple[int, ...]
    torus: WeightVector
    e_word: tuple[int, ...]


class AlgebraElement:
    """Finite map monomial -> scalar; zero coefficients never stored."""

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra: "QuantumAlgebra", terms: dict):
        self.algebra = algebra
        self.terms = terms
        self._hash = None

    def _check(self, other: "AlgebraElement") -> None:
        if self.algebra is not other.algebra:
            raise ContextMismatchError("elements of different algebras")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            prev = out.get(m)
            if prev is None:
                out[m] = c
            else:
                s = prev + c
                if s.is_zero():
                    del out[m]
                else:
                    out[m] = s
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def scale(self, c: Scalar) -> "AlgebraElement":
        if c.is_zero():
            return self.algebra.zero()
        return AlgebraElement(self.algebra, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return self.algebra.multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(
                ((m, c) for m, c in self.terms.items()),
                key=lambda mc: _mono_sort_key(mc[0]),
            )))
        return self._hash

    def qconj(self) -> "AlgebraElement":
        return self.algebra.qconj(self)

    def weight(self) -> WeightVector | None:
        """Adjoint weight if homogeneous, else None."""
        w = None
        for m in self.terms:
            mw = self.algebra.monomial_weight(m)
            if w is None:
                w = mw
            elif w != mw:
                return None
        return w if w is not None else WeightVector([0] * self.algebra.cartan.rank)

    def __repr__(self):
        return f"AlgebraElement({render_element(self)})"


def _mono_sort_key(m: PBWMonomial):
    return (
        len(m.f_word) + len(m.e_word),
        m.f_word,
        m.torus.coords,
        m.e_word,
    )


class TensorElement:
    """Element of the tensor square: map (monomial, monomial) -> scalar."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "QuantumAlgebra", terms: dict):
        self.algebra = algebra
        self.terms = terms

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            prev = out.get(k)
            if prev is None:
                out[k] = c
            else:
                s = prev + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
        return TensorElement(self.algebra, out)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        alg = self.algebra
        out: dict = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in other.terms.items():
                cd = c * d
                left = alg._mul_monomials(a1, b1)
                right = alg._mul_monomials(a2, b2)
                for m1, c1 in left.items():
                    for m2, c2 in right.items():
                        coef = cd * c1 * c2
                        if coef.is_zero():
                            continue
                        key = (m1, m2)
                        prev = out.get(key)
                        if prev is None:
                            out[key] = coef
                        else:
                            s = prev + coef
                            if s.is_zero():
                                del out[key]
                            else:
                                out[key] = s
        return TensorElement(self.algebra, out)

    def scale(self, c: Scalar) -> "TensorElement":
        if c.is_zero():
            return TensorElement(self.algebra, {})
        return TensorElement(self.algebra, {k: c * x for k, x in self.terms.items()})

    def swap(self) -> "TensorElement":
        return TensorElement(self.algebra, {(b, a): c for (a, b), c in self.terms.items()})

    def qconj(self) -> "TensorElement":
        alg = self.algebra
        return TensorElement(
            alg,
            {
                (alg._mono_qconj(a), alg._mono_qconj(b)): c.qconj()
                for (a, b), c in self.terms.items()
            },
        )

    def counit_left(self) -> AlgebraElement:
        """(counit x id) applied to the tensor."""
        alg = self.algebra
        out = alg.zero()
        for (a, b), c in self.terms.items():
            e = alg._mono_counit(a)
            if not e.is_zero():
                out = out + AlgebraElement(alg, {b: c * e})
        return out

    def counit_right(self) -> AlgebraElement:
        alg = self.algebra
        out = alg.zero()
        for (a, b), c in self.terms.items():
            e = alg._mono_counit(b)
            if not e.is_zero():
                out = out + AlgebraElement(alg, {a: c * e})
        return out

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def pairs(self) -> Iterator[tuple[Scalar, AlgebraElement, AlgebraElement]]:
        alg = self.algebra
        for (a, b), c in self.terms.items():
            yield c, AlgebraElement(alg, {a: alg.ctx.one()}), AlgebraElement(alg, {b: alg.ctx.one()})


class _WordSpace:
    """Canonical quotient data for all words of one multidegree."""

    __slots__ = ("canonical", "rewrite")

    def __init__(self, canonical: list, rewrite: dict):
        self.canonical = canonical
        self.rewrite = rewrite


def _words_of_multidegree(deg: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All words with the given letter counts, in lexicographic order."""
    out = []

    def rec(prefix, remaining):
        if sum(remaining) == 0:
            out.append(tuple(prefix))
            return
        for i, r in enumerate(remaining):
            if r:
                remaining2 = list(remaining)
                remaining2[i] -= 1
                prefix.append(i)
                rec(prefix, remaining2)
                prefix.pop()

    rec([], list(deg))
    return out


class QuantumAlgebra:
    """One quantized enveloping algebra: Cartan data plus a scalar context,
    with all rewriting caches."""

    def __init__(self, cartan: CartanData, D: int | None = None,
                 degree_cap: int | None = None):
        self.cartan = cartan
        self.ctx = ScalarContext(D if D is not None else cartan.default_d)
        if degree_cap is None:
            env = os.environ.get("QLIE_DEGREE_CAP")
            if env is not None:
                degree_cap = int(env)
                if degree_cap <= 0:
                    raise QlieError("QLIE_DEGREE_CAP must be positive")
            else:
                degree_cap = cartan.default_degree_cap
        self.degree_cap = degree_cap
        self._word_spaces: dict = {}
        self._prod_cache: dict = {}
        self._efswap_cache: dict = {}
        self._coprod_cache: dict = {}
        self._antipode_cache: dict = {}
        self._antipode_inv_cache: dict = {}
        self._theta_cache: dict = {}
        self._tau_cache: dict = {}
        self._zero_weight = WeightVector([0] * cartan.rank)
        self._q_cache: dict = {}
        self._half_roots = tuple(
            a.scale(mpq(1, 2)) for a in cartan.simple_roots
        )
        self._qi = tuple(self._q_power(mpq(d)) for d in cartan.d)
        self._qi_inv = tuple(self._q_power(-mpq(d)) for d in cartan.d)
        self._contraction = tuple(
            (self._qi[i] - self._qi_inv[i]).inverse() for i in range(cartan.rank)
        )

    # -- scalar helpers ------------------------------------------------------

    def _q_power(self, exponent) -> Scalar:
        key = mpq(exponent)
        hit = self._q_cache.get(key)
        if hit is None:
            hit = self.ctx.q_power(key)
            self._q_cache[key] = hit
        return hit

    # -- element constructors --------------------------------------------------

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def one(self) -> AlgebraElement:
        return AlgebraElement(self, {PBWMonomial((), self._zero_weight, ()): self.ctx.one()})

    def x_plus(self, i: int) -> AlgebraElement:
        """Raising generator (1-based index)."""
        self._check_index(i)
        m = PBWMonomial((), self._zero_weight, (i - 1,))
        return AlgebraElement(self, {m: self.ctx.one()})

    def x_minus(self, i: int) -> AlgebraElement:
        self._check_index(i)
        m = PBWMonomial((i - 1,), self._zero_weight, ())
        return AlgebraElement(self, {m: self.ctx.one()})

    def k(self, lam: WeightVector) -> AlgebraElement:
        m = PBWMonomial((), lam, ())
        return AlgebraElement(self, {m: self.ctx.one()})

    def k_simple(self, i: int, power=1) -> AlgebraElement:
        self._check_index(i)
        return self.k(self.cartan.simple_roots[i - 1].scale(mpq(power)))

    def u_element(self) -> AlgebraElement:
        """The torus element implementing the square of the antipode."""
        return self.k(self.cartan.rho.scale(2))

    def monomial(self, f_word, torus: WeightVector, e_word) -> AlgebraElement:
        """Element for a single normal-ordered monomial (0-based letters);
        the words are reduced to canonical quotient coordinates."""
        out: dict = {}
        for cf, fw in self._reduce_word(tuple(f_word)):
            for ce, ew in self._reduce_word(tuple(e_word)):
                m = PBWMonomial(fw, torus, ew)
                c = cf * ce
                prev = out.get(m)
                out[m] = c if prev is None else prev + c
        return AlgebraElement(self, {m: c for m, c in out.items() if not c.is_zero()})

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.cartan.rank:
            raise QlieError(f"generator index {i} out of range for {self.cartan.name}")

    # -- word reduction ----------------------------------------------------------

    def _multidegree(self, word: tuple[int, ...]) -> tuple[int, ...]:
        deg = [0] * self.cartan.rank
        for a in word:
            deg[a] += 1
        return tuple(deg)

    def _word_weight(self, word: tuple[int, ...]) -> WeightVector:
        deg = self._multidegree(word)
        return WeightVector(deg)

    def _serre_relations(self):
        """The quantum Serre relations as word dictionaries (same coefficients
        for the raising and the lowering family)."""
        rels = []
        cm = self.cartan.cartan_matrix
        for i in range(self.cartan.rank):
            for j in range(self.cartan.rank):
                if i == j:
                    continue
                n = 1 - cm[i][j]
                rel: dict = {}
                for kk in range(n + 1):
                    word = (i,) * kk + (j,) + (i,) * (n - kk)
                    coef = self._q_binomial(n, kk, i)
                    if kk % 2 == 1:
                        coef = -coef
                    rel[word] = rel.get(word, self.ctx.zero()) + coef
                rels.append(rel)
        return rels

    def _q_int(self, n: int, i: int) -> Scalar:
        """Balanced q-integer at q_i: q_i^(n-1) + q_i^(n-3) + ... + q_i^(1-n)."""
        acc = self.ctx.zero()
        d = mpq(self.cartan.d[i])
        for j in range(n):
            acc = acc + self._q_power(d * (n - 1 - 2 * j))
        return acc

    def _q_binomial(self, n: int, kk: int, i: int) -> Scalar:
        num = self.ctx.one()
        den = self.ctx.one()
        for t in range(1, kk + 1):
            num = num * self._q_int(n - kk + t, i)
            den = den * self._q_int(t, i)
        return num / den

    def _word_space(self, deg: tuple[int, ...]) -> _WordSpace:
        hit = self._word_spaces.get(deg)
        if hit is not None:
            return hit
        if sum(deg) > self.degree_cap:
            raise DegreeCapError(
                f"word of multidegree {deg} exceeds the degree cap "
                f"{self.degree_cap} for {self.cartan.name}"
            )
        words = _words_of_multidegree(deg)
        index = {w: k for k, w in enumerate(words)}
        rows = []
        for rel in self._serre_relations():
            rel_deg = self._multidegree(next(iter(rel)))
            residual = tuple(a - b for a, b in zip(deg, rel_deg))
            if any(r < 0 for r in residual):
                continue
            for left_deg in _sub_multidegrees(residual):
                right_deg = tuple(a - b for a, b in zip(residual, left_deg))
                for w1 in _words_of_multidegree(left_deg):
                    for w2 in _words_of_multidegree(right_deg):
                        row = [self.ctx.zero()] * len(words)
                        for rw, c in rel.items():
                            row[index[w1 + rw + w2]] = c
                        rows.append(row)
        if rows:
            mat, pivots = rref(Matrix(self.ctx, rows))
            pivot_cols = set(pivots)
            rewrite = {}
            for r, pc in enumerate(pivots):
                expr = []
                for c in range(len(words)):
                    if c in pivot_cols or mat.entries[r][c].is_zero():
                        continue
                    expr.append((-mat.entries[r][c], words[c]))
                rewrite[words[pc]] = expr
            canonical = [w for k, w in enumerate(words) if k not in pivot_cols]
        else:
            rewrite = {}
            canonical = words
        space = _WordSpace(canonical, rewrite)
        self._word_spaces[deg] = space
        return space

    def _reduce_word(self, word: tuple[int, ...]):
        """Canonical coordinates of a raw word: list of (scalar, word)."""
        space = self._word_space(self._multidegree(word))
        rw = space.rewrite.get(word)
        if rw is None:
            return [(self.ctx.one(), word)]
        return rw

    # -- multiplication -------------------------------------------------------------

    def _ef_swap(self, e_word: tuple[int, ...], f_word: tuple[int, ...]):
        """Normal-order e_word * f_word: list of (scalar, f', torus weight, e')
        with raw output words (not yet reduced)."""
        if not e_word or not f_word:
            return [(self.ctx.one(), f_word, self._zero_weight, e_word)]
        key = (e_word, f_word)
        hit = self._efswap_cache.get(key)
        if hit is not None:
            return hit
        a = e_word[-1]
        b = f_word[0]
        e_head = e_word[:-1]
        f_tail = f_word[1:]
        out: dict = {}

        def emit(coef, fw, lam, ew):
            if coef.is_zero():
                return
            kk = (fw, lam, ew)
            prev = out.get(kk)
            if prev is None:
                out[kk] = coef
            else:
                s = prev + coef
                if s.is_zero():
                    del out[kk]
                else:
                    out[kk] = s

        # commuting the innermost pair: e_a f_b = f_b e_a + delta_ab correction
        for c1, f1, lam1, e1 in self._ef_swap(e_head, (b,)):
            # term so far: c1 * f1 k_lam1 e1 ; multiply by e_a then f_tail
            e2 = e1 + (a,)
            for c2, f2, lam2, e3 in self._ef_swap(e2, f_tail):
                # f1 k_lam1 f2 k_lam2 e3 -> push k_lam1 right past f2
                shift = -self.cartan.pairing(lam1, self._word_weight(f2))
                coef = c1 * c2 * self._q_power(shift)
                emit(coef, f1 + f2, lam1 + lam2, e3)
        if a == b:
            s = self._contraction[a]
            alpha = self.cartan.simple_roots[a]
            wf = self._word_weight(f_tail)
            for sign in (1, -1):
                mu = alpha.scale(sign)
                factor = s if sign == 1 else -s
                # the torus correction passes the remaining f-word to its
                # left and the swapped e-part to its right
                for c3, f3, lam3, e4 in self._ef_swap(e_head, f_tail):
                    shift = -self.cartan.pairing(mu, wf) \
                        - self.cartan.pairing(mu, self._word_weight(e4))
                    emit(factor * c3 * self._q_power(shift), f3, lam3 + mu, e4)
        result = [(c, fw, lam, ew) for (fw, lam, ew), c in out.items()]
        self._efswap_cache[key] = result
        return result

    def _mul_monomials(self, m1: PBWMonomial, m2: PBWMonomial) -> dict:
        key = (m1, m2)
        hit = self._prod_cache.get(key)
        if hit is not None:
            return hit
        if (len(m1.f_word) + len(m2.f_word) > self.degree_cap
                or len(m1.e_word) + len(m2.e_word) > self.degree_cap):
            raise DegreeCapError(
                f"product word length exceeds degree cap {self.degree_cap} "
                f"({self.cartan.name}); raise QLIE_DEGREE_CAP if intended"
            )
        out: dict = {}
        pairing = self.cartan.pairing
        for c, fm, mu, em in self._ef_swap(m1.e_word, m2.f_word):
            # m1.f k_lam1 [fm k_mu em] k_lam2 m2.e
            shift = -pairing(m1.torus, self._word_weight(fm))
            shift += -pairing(m2.torus, self._word_weight(em))
            coef = c * self._q_power(shift)
            torus = m1.torus + mu + m2.torus
            for cf, fw in self._reduce_word(m1.f_word + fm):
                for ce, ew in self._reduce_word(em + m2.e_word):
                    m = PBWMonomial(fw, torus, ew)
                    cc = coef * cf * ce
                    if cc.is_zero():
                        continue
                    prev = out.get(m)
                    if prev is None:
                        out[m] = cc
                    else:
                        s = prev + cc
                        if s.is_zero():
                            del out[m]
                        else:
                            out[m] = s
        self._prod_cache[key] = out
        return out

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        out: dict = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                c12 = c1 * c2
                for m, c in self._mul_monomials(m1, m2).items():
                    cc = c12 * c
                    if cc.is_zero():
                        continue
                    prev = out.get(m)
                    if prev is None:
                        out[m] = cc
                    else:
                        s = prev + cc
                        if s.is_zero():
                            del out[m]
                        else:
                            out[m] = s
        return AlgebraElement(self, out)

    # -- gradings ------------------------------------------------------------------

    def monomial_weight(self, m: PBWMonomial) -> WeightVector:
        return self._word_weight(m.e_word) - self._word_weight(m.f_word)

    def weight_components(self, x: AlgebraElement) -> dict:
        comps: dict = {}
        for m, c in x.terms.items():
            w = self.monomial_weight(m)
            comps.setdefault(w, {})[m] = c
        return {w: AlgebraElement(self, t) for w, t in comps.items()}

    # -- Hopf structure ---------------------------------------------------------------

    def _mono_coproduct(self, m: PBWMonomial) -> TensorElement:
        hit = self._coprod_cache.get(m)
        if hit is not None:
            return hit
        one = self.ctx.one()
        unit = PBWMonomial((), self._zero_weight, ())
        acc = TensorElement(self, {(PBWMonomial((), m.torus, ()),
                                    PBWMonomial((), m.torus, ())): one})
        # multiply letter coproducts: lowering letters left of the torus
        # (reversed, so the first letter ends up outermost), raising ones right
        for a in reversed(m.f_word):
            fa = PBWMonomial((a,), self._zero_weight, ())
            half = self._half_roots[a]
            legs = TensorElement(self, {
                (fa, PBWMonomial((), half, ())): one,
                (PBWMonomial((), -half, ()), fa): one,
            })
            acc = legs * acc
        for a in m.e_word:
            ea = PBWMonomial((), self._zero_weight, (a,))
            half = self._half_roots[a]
            legs = TensorElement(self, {
                (ea, PBWMonomial((), half, ())): one,
                (PBWMonomial((), -half, ()), ea): one,
            })
            acc = acc * legs
        self._coprod_cache[m] = acc
        return acc

    def coproduct(self, x: AlgebraElement) -> TensorElement:
        out = TensorElement(self, {})
        for m, c in x.terms.items():
            out = out + self._mono_coproduct(m).scale(c)
        return out

    def _mono_counit(self, m: PBWMonomial) -> Scalar:
        if m.f_word or m.e_word:
            return self.ctx.zero()
        return self.ctx.one()

    def counit(self, x: AlgebraElement) -> Scalar:
        acc = self.ctx.zero()
        for m, c in x.terms.items():
            if not m.f_word and not m.e_word:
                acc = acc + c
        return acc

    def antipode(self, x: AlgebraElement) -> AlgebraElement:
        out = self.zero()
        for m, c in x.terms.items():
            out = out + self._mono_antipode(m).scale(c)
        return out

    def _mono_antipode(self, m: PBWMonomial) -> AlgebraElement:
        hit = self._antipode_cache.get(m)
        if hit is None:
            hit = self._antipode_apply(m, inverse=False)
            self._antipode_cache[m] = hit
        return hit

    def antipode_inv(self, x: AlgebraElement) -> AlgebraElement:
        out = self.zero()
        for m, c in x.terms.items():
            hit = self._antipode_inv_cache.get(m)
            if hit is None:
                hit = self._antipode_apply(m, inverse=True)
                self._antipode_inv_cache[m] = hit
            out = out + hit.scale(c)
        return out

    def _antipode_apply(self, m: PBWMonomial, inverse: bool) -> AlgebraElement:
        # anti-homomorphism: S(F k E) = S(E) k^(-1) S(F), letters reversed,
        # S(e_i) = -q_i^(+-1) e_i and S(f_i) = -q_i^(-+1) f_i
        acc = self.one()
        for a in reversed(m.e_word):
            g = self.x_plus(a + 1).scale(
                -(self._qi_inv[a] if inverse else self._qi[a])
            )
            acc = acc * g
        acc = acc * self.k(-m.torus)
        for a in reversed(m.f_word):
            g = self.x_minus(a + 1).scale(
                -(self._qi[a] if inverse else self._qi_inv[a])
            )
            acc = acc * g
        return acc

    # -- involutions -------------------------------------------------------------------

    def _mono_qconj(self, m: PBWMonomial) -> PBWMonomial:
        return PBWMonomial(m.f_word, -m.torus, m.e_word)

    def qconj(self, x: AlgebraElement) -> AlgebraElement:
        """Deformation-parameter conjugation: fixes the generators, inverts
        the torus, conjugates every coefficient.  Canonical words stay
        canonical (the Serre coefficients are palindromic), so no reduction
        is needed."""
        return AlgebraElement(
            self,
            {self._mono_qconj(m): c.qconj() for m, c in x.terms.items()},
        )

    def theta(self, x: AlgebraElement) -> AlgebraElement:
        """The raising/lowering exchange automorphism (torus inverted)."""
        out = self.zero()
        for m, c in x.terms.items():
            hit = self._theta_cache.get(m)
            if hit is None:
                raising = self.monomial((), self._zero_weight, m.f_word)
                lowering = self.monomial(m.e_word, self._zero_weight, ())
                hit = raising * self.k(-m.torus) * lowering
                self._theta_cache[m] = hit
            out = out + hit.scale(c)
        return out

    def theta_tilde(self, x: AlgebraElement) -> AlgebraElement:
        return self.qconj(self.theta(x))

    def s_tilde(self, x: AlgebraElement) -> AlgebraElement:
        return self.qconj(self.antipode(x))

    def tau(self, x: AlgebraElement) -> AlgebraElement:
        """Diagram automorphism (identity when the diagram has no symmetry)."""
        perm = self.cartan.tau_perm
        if self.cartan.tau_is_trivial():
            return x
        out = self.zero()
        for m, c in x.terms.items():
            hit = self._tau_cache.get(m)
            if hit is None:
                fw = tuple(perm[a] for a in m.f_word)
                ew = tuple(perm[a] for a in m.e_word)
                hit = self.monomial(fw, self.cartan.tau(m.torus), ew)
                self._tau_cache[m] = hit
            out = out + hit.scale(c)
        return out

    # -- adjoint actions -----------------------------------------------------------------

    def adjoint(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        """x o y = sum x_(1) y S(x_(2))."""
        out = self.zero()
        for m, c in x.terms.items():
            for (m1, m2), c12 in self._mono_coproduct(m).terms.items():
                left = AlgebraElement(self, {m1: c * c12})
                out = out + left * y * self._mono_antipode(m2)
        return out

    def adjoint_bullet(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        """x bullet y = sum x_(2) y S^(-1)(x_(1))."""
        out = self.zero()
        for m, c in x.terms.items():
            for (m1, m2), c12 in self._mono_coproduct(m).terms.items():
                hit = self._antipode_inv_cache.get(m1)
                if hit is None:
                    hit = self._antipode_apply(m1, inverse=True)
                    self._antipode_inv_cache[m1] = hit
                mid = AlgebraElement(self, {m2: c * c12})
                out = out + mid * y * hit
        return out

    def ad_generator(self, i: int, sign: int, y: AlgebraElement) -> AlgebraElement:
        """Adjoint action of a simple generator (1-based i, sign +1/-1),
        through the closed two-term formula."""
        self._check_index(i)
        a = i - 1
        half = self._half_roots[a]
        k_minus = self.k(-half)
        if sign > 0:
            g = self.x_plus(i)
            qfac = self._qi[a]
        else:
            g = self.x_minus(i)
            qfac = self._qi_inv[a]
        return g * y * k_minus - (k_minus * y * g).scale(qfac)

    def ad_torus(self, lam: WeightVector, y: AlgebraElement) -> AlgebraElement:
        """k_lam o y: scaling of each weight component."""
        out: dict = {}
        for m, c in y.terms.items():
            w = self.monomial_weight(m)
            out[m] = c * self._q_power(self.cartan.pairing(lam, w))
        return AlgebraElement(self, {m: c for m, c in out.items() if not c.is_zero()})

    def ad_cartan(self, i: int, y: AlgebraElement) -> AlgebraElement:
        """Adjoint action of the Cartan generator h_i: weight extraction."""
        self._check_index(i)
        a = i - 1
        out: dict = {}
        for m, c in y.terms.items():
            w = self.monomial_weight(m)
            eig = self.cartan.coroot_pairing(w, a)
            if eig != 0:
                out[m] = c * self.ctx.from_rational(eig.numerator, eig.denominator)
        return AlgebraElement(self, out)


def _sub_multidegrees(deg: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All componentwise-smaller multidegrees, in a fixed order."""
    ranges = [range(d + 1) for d in deg]
    out = []

    def rec(prefix, k):
        if k == len(ranges):
            out.append(tuple(prefix))
            return
        for v in ranges[k]:
            prefix.append(v)
            rec(prefix, k + 1)
            prefix.pop()

    rec([], 0)
    return out


def render_element(x: AlgebraElement, q_symbol: str = "q") -> str:
    """Debug rendering of an element in generator notation."""
    from .scalars import render_q

    if x.is_zero():
        return "0"
    parts = []
    for m in sorted(x.terms, key=_mono_sort_key):
        c = x.terms[m]
        pieces = []
        for a in m.f_word:
            pieces.append(f"f{a+1}")
        if not m.torus.is_zero():
            coords = ",".join(str(c_) for c_ in m.torus.coords)
            pieces.append(f"k({coords})")
        for a in m.e_word:
            pieces.append(f"e{a+1}")
        body = "*".join(pieces) if pieces else "1"
        coef = render_q(c, q_symbol)
        if coef == "1":
            parts.append(body)
        elif coef == "-1":
            parts.append(f"-{body}")
        else:
            parts.append(f"({coef})*{body}")
    return " + ".join(parts)
