"""Exact coefficient field of the engine.

Scalars are rational functions in a root-of-q variable ``v`` (``v = q^(1/D)``
for a per-construction integer ``D``) with Gaussian-rational coefficients,
optionally extended by a single formal radical ``C`` whose square is a fixed
rational function.  Everything is kept in a canonical form so that equality
is plain coefficient comparison:

* Laurent numerators are sparse maps ``exponent -> Gaussian rational``.
* Denominators are honest polynomials in ``v``: monic, nonzero constant
  term, no common factor with the numerator.
* A scalar with a radical part is ``rat + rad * C`` with both components
  canonical rational functions.

The three nonstandard operations the rest of the engine leans on:

* ``qconj`` -- the ring automorphism ``v -> 1/v`` (deformation-parameter
  conjugation); ``C`` is fixed by it, which forces ``C^2`` to be
  qconj-invariant (asserted when the radical is installed).
* ``classical_limit`` -- exact evaluation at ``v = 1``.
* ``sqrt`` -- square root within the field or its single-radical extension,
  failing loudly with the offending radicand otherwise.
"""

from __future__ import annotations

from math import isqrt

from gmpy2 import mpq

from .errors import (
    ArithmeticFieldError,
    ContextMismatchError,
    PoleAtOneError,
    QlieError,
    SquareRootError,
)

_MPQ_ZERO = mpq(0)
_MPQ_ONE = mpq(1)


def _mpq_sqrt(x) -> mpq | None:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return mpq(rn, rd)
    return None


class GaussianRational:
    """A number a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    def __add__(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ArithmeticFieldError("division by zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def sqrt(self) -> "GaussianRational | None":
        """Exact square root inside Q(i), or None if there is none."""
        if self.im == 0:
            r = _mpq_sqrt(self.re)
            if r is not None:
                return GaussianRational(r, 0)
            r = _mpq_sqrt(-self.re)
            if r is not None:
                return GaussianRational(0, r)
            return None
        s = _mpq_sqrt(self.re * self.re + self.im * self.im)
        if s is None:
            return None
        x = _mpq_sqrt((self.re + s) / 2)
        if x is None or x == 0:
            return None
        y = self.im / (2 * x)
        return GaussianRational(x, y)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


GR_ZERO = GaussianRational(0, 0)
GR_ONE = GaussianRational(1, 0)
GR_I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# Laurent polynomials as sparse dicts {exponent: GaussianRational}, zero
# coefficients never stored.  These helpers are module-internal.
# ---------------------------------------------------------------------------

def _l_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s.is_zero():
                del out[e]
            else:
                out[e] = s
    return out


def _l_neg(a: dict) -> dict:
    return {e: -c for e, c in a.items()}


def _l_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            p = ca * cb
            s = out.get(e)
            if s is None:
                if not p.is_zero():
                    out[e] = p
            else:
                s = s + p
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
    return out


def _l_scale(a: dict, c: GaussianRational) -> dict:
    if c.is_zero():
        return {}
    return {e: x * c for e, x in a.items()}


def _l_shift(a: dict, k: int) -> dict:
    if k == 0:
        return a
    return {e + k: c for e, c in a.items()}


def _l_qconj(a: dict) -> dict:
    return {-e: c for e, c in a.items()}


def _l_eval_one(a: dict) -> GaussianRational:
    out = GR_ZERO
    for c in a.values():
        out = out + c
    return out


def _l_min_exp(a: dict) -> int:
    return min(a) if a else 0


def _l_max_exp(a: dict) -> int:
    return max(a) if a else 0


def _to_dense(a: dict) -> tuple[int, list[GaussianRational]]:
    """Laurent dict -> (shift, dense coefficient list from exponent `shift`)."""
    if not a:
        return 0, []
    lo, hi = min(a), max(a)
    dense = [GR_ZERO] * (hi - lo + 1)
    for e, c in a.items():
        dense[e - lo] = c
    return lo, dense


def _from_dense(shift: int, dense: list[GaussianRational]) -> dict:
    return {shift + k: c for k, c in enumerate(dense) if not c.is_zero()}


def _d_trim(p: list) -> list:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _d_divmod(a: list, b: list) -> tuple[list, list]:
    """Dense polynomial division over Q(i); b must be nonzero."""
    a = list(a)
    q = [GR_ZERO] * max(0, len(a) - len(b) + 1)
    inv_lead = b[-1].inverse()
    while len(a) >= len(b):
        c = a[-1] * inv_lead
        k = len(a) - len(b)
        q[k] = c
        for j, bc in enumerate(b):
            a[k + j] = a[k + j] - c * bc
        _d_trim(a)
        if not a:
            break
    return _d_trim(q), a


def _d_gcd(a: list, b: list) -> list:
    """Monic gcd of dense polynomials over Q(i)."""
    a, b = _d_trim(list(a)), _d_trim(list(b))
    while b:
        _, r = _d_divmod(a, b)
        a, b = b, r
    if a:
        inv = a[-1].inverse()
        a = [c * inv for c in a]
    return a


def _d_derivative(a: list) -> list:
    return _d_trim(
        [GaussianRational(k, 0) * a[k] for k in range(1, len(a))]
    )


def _d_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [GR_ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return _d_trim(out)


def _d_square_split(p: list) -> tuple[list, list]:
    """Write p = rho * s^2 with rho squarefree (Yun's algorithm, char 0)."""
    p = _d_trim(list(p))
    if len(p) <= 1:
        return p, [GR_ONE]
    rho = [GR_ONE]
    s = [GR_ONE]
    g = _d_gcd(p, _d_derivative(p))
    w, _ = _d_divmod(p, g)
    mult = 1
    while len(w) > 1:
        gw = _d_gcd(w, g)
        factor, _ = _d_divmod(w, gw)  # factors of exact multiplicity `mult`
        if len(factor) > 1:
            if mult % 2 == 1:
                rho = _d_mul(rho, factor)
            for _ in range(mult // 2):
                s = _d_mul(s, factor)
        w = gw
        g, _ = _d_divmod(g, gw)
        mult += 1
    # leftover constant of p is carried by rho via a final exact division
    ss = _d_mul(s, s)
    q, r = _d_divmod(p, _d_mul(rho, ss))
    if r:
        raise QlieError("squarefree split failed (internal)")
    rho = _d_mul(rho, q)
    return rho, s


def _d_sqrt(p: list) -> list | None:
    """Exact polynomial square root of a dense polynomial, or None."""
    p = _d_trim(list(p))
    if not p:
        return []
    if (len(p) - 1) % 2 != 0:
        return None
    lead = p[-1].sqrt()
    if lead is None:
        return None
    m = (len(p) - 1) // 2
    r = [GR_ZERO] * (m + 1)
    r[m] = lead
    two_lead_inv = (lead + lead).inverse()
    for k in range(m - 1, -1, -1):
        # coefficient of v^(k+m) in r*r, excluding the 2*r[k]*r[m] term
        acc = GR_ZERO
        for j in range(k + 1, m):
            if 0 <= k + m - j <= m:
                acc = acc + r[j] * r[k + m - j]
        target = p[k + m] if k + m < len(p) else GR_ZERO
        r[k] = (target - acc) * two_lead_inv
    if _d_mul(r, r) == p:
        return _d_trim(r)
    return None


# Gaussian-integer gcd, for content extraction.

def _gauss_int_gcd(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    """Euclidean gcd in Z[i]; operands and result as (re, im) integer pairs."""

    def norm(z):
        return z[0] * z[0] + z[1] * z[1]

    def sub(z, w):
        return (z[0] - w[0], z[1] - w[1])

    def mul(z, w):
        return (z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0])

    def rounded_div(z, w):
        n = norm(w)
        zr = z[0] * w[0] + z[1] * w[1]
        zi = -z[0] * w[1] + z[1] * w[0]

        def rnd(num):
            q, r = divmod(num, n)
            if 2 * r > n:
                q += 1
            return q

        return (rnd(zr), rnd(zi))

    while b != (0, 0):
        q = rounded_div(a, b)
        a, b = b, sub(a, mul(b, q))
    # normalize to a canonical associate: re > 0, im >= 0 quadrant
    re, im = a
    for _ in range(4):
        if re > 0 and im >= 0:
            break
        re, im = -im, re
    return (re, im)


class RationalFunction:
    """Canonical quotient of Laurent polynomials over Q(i)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: dict, den: dict, _canonical=False):
        if _canonical:
            self.num, self.den = num, den
        else:
            self.num, self.den = _canonicalize(num, den)
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "RationalFunction":
        return RationalFunction({}, {0: GR_ONE}, _canonical=True)

    @staticmethod
    def one() -> "RationalFunction":
        return RationalFunction({0: GR_ONE}, {0: GR_ONE}, _canonical=True)

    @staticmethod
    def from_gauss(c: GaussianRational) -> "RationalFunction":
        num = {} if c.is_zero() else {0: c}
        return RationalFunction(num, {0: GR_ONE}, _canonical=True)

    @staticmethod
    def v_power(e: int) -> "RationalFunction":
        return RationalFunction({e: GR_ONE}, {0: GR_ONE}, _canonical=True)

    # -- ring/field operations --------------------------------------------

    def __add__(self, other):
        if self.den == other.den:
            return RationalFunction(_l_add(self.num, other.num), dict(self.den))
        num = _l_add(_l_mul(self.num, other.den), _l_mul(other.num, self.den))
        return RationalFunction(num, _l_mul(self.den, other.den))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RationalFunction(_l_neg(self.num), dict(self.den), _canonical=True)

    def __mul__(self, other):
        return RationalFunction(
            _l_mul(self.num, other.num), _l_mul(self.den, other.den)
        )

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ArithmeticFieldError("division by zero rational function")
        return RationalFunction(dict(self.den), dict(self.num))

    def __truediv__(self, other):
        return self * other.inverse()

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (
                    tuple(sorted((e, c.re, c.im) for e, c in self.num.items())),
                    tuple(sorted((e, c.re, c.im) for e, c in self.den.items())),
                )
            )
        return self._hash

    # -- engine-specific operations -----------------------------------------

    def qconj(self) -> "RationalFunction":
        return RationalFunction(_l_qconj(self.num), _l_qconj(self.den))

    def eval_one(self) -> GaussianRational:
        d = _l_eval_one(self.den)
        if d.is_zero():
            raise PoleAtOneError(str(self))
        return _l_eval_one(self.num) / d

    def sqrt(self) -> "RationalFunction | None":
        """Square root in Q(i)(v), or None.  f = n/d has a root iff n*d is a
        square (then sqrt(f) = sqrt(n*d)/d), modulo a v-power shift."""
        if self.is_zero():
            return RationalFunction.zero()
        prod = _l_mul(self.num, self.den)
        lo, dense = _to_dense(prod)
        if lo % 2 != 0:
            return None
        root = _d_sqrt(dense)
        if root is None:
            return None
        num = _from_dense(lo // 2, root)
        return RationalFunction(num, dict(self.den))

    def square_split(self) -> tuple["RationalFunction", "RationalFunction"]:
        """Write self = rho * s^2 with rho a squarefree quotient (up to one
        power of v and a constant, both kept in rho)."""
        if self.is_zero():
            return RationalFunction.zero(), RationalFunction.one()
        nlo, ndense = _to_dense(self.num)
        _, ddense = _to_dense(self.den)
        _, n_s = _d_square_split(ndense)
        _, d_s = _d_square_split(ddense)
        s = RationalFunction(_from_dense(0, n_s), _from_dense(0, d_s))
        s = s * RationalFunction.v_power(nlo // 2)
        rho = self / (s * s)
        return rho, s

    def __repr__(self):
        return f"RationalFunction({render_poly(self.num)!r}/{render_poly(self.den)!r})"


def _canonicalize(num: dict, den: dict) -> tuple[dict, dict]:
    """Reduce to canonical form: den a monic polynomial with nonzero constant
    term, gcd(num, den) trivial; all v-power content pushed into num."""
    if not den:
        raise ArithmeticFieldError("zero denominator")
    if not num:
        return {}, {0: GR_ONE}
    # shift denominator to an honest polynomial with nonzero constant term
    dlo = _l_min_exp(den)
    den = _l_shift(den, -dlo)
    num = _l_shift(num, -dlo)
    if len(den) == 1 and 0 in den:
        c = den[0]
        if c == GR_ONE:
            return num, den
        inv = c.inverse()
        return _l_scale(num, inv), {0: GR_ONE}
    nlo, ndense = _to_dense(num)
    _, ddense = _to_dense(den)
    g = _d_gcd(ndense, ddense)
    if len(g) > 1:
        ndense, _ = _d_divmod(ndense, g)
        ddense, _ = _d_divmod(ddense, g)
    # den may have lost its constant term through the gcd? (cannot: gcd of a
    # polynomial with nonzero constant term has nonzero constant term)
    lead = ddense[-1]
    if lead != GR_ONE:
        inv = lead.inverse()
        ndense = [c * inv for c in ndense]
        ddense = [c * inv for c in ddense]
    return _from_dense(nlo, ndense), _from_dense(0, ddense)


RF_ZERO = RationalFunction.zero()
RF_ONE = RationalFunction.one()


class ScalarContext:
    """Shared per-construction configuration: the root order D of v = q^(1/D)
    and (optionally, installed once) the square of the formal radical C."""

    __slots__ = ("D", "radical_square", "radical_classical", "_frozen")

    def __init__(self, D: int):
        if D <= 0:
            raise QlieError("D must be a positive integer")
        self.D = D
        self.radical_square: Scalar | None = None
        self.radical_classical: GaussianRational | None = None
        self._frozen = False

    def install_radical(self, square: "Scalar") -> None:
        """Define C^2 = square (write-once).  The square must be a nonzero
        radical-free scalar, invariant under qconj, with a nonzero value at
        v = 1; violation of any of these is an immediate error."""
        if self.radical_square is not None:
            raise QlieError("radical already installed in this context")
        if square.ctx is not self:
            raise ContextMismatchError("radical square from a foreign context")
        if square.rad is not None:
            raise QlieError("C^2 must be radical-free")
        if square.rat.is_zero():
            raise QlieError("C^2 must be nonzero")
        if square.rat.qconj() != square.rat:
            raise QlieError(
                "C^2 must be invariant under v -> 1/v; got "
                + render_scalar(square)
            )
        val = square.rat.eval_one()  # raises on a pole at v = 1
        if val.is_zero():
            raise QlieError("C^2 must be nonzero at v = 1")
        self.radical_square = square
        self.radical_classical = val.sqrt()  # may be None (kept formal)

    # -- scalar constructors ------------------------------------------------

    def zero(self) -> "Scalar":
        return Scalar(self, RF_ZERO)

    def one(self) -> "Scalar":
        return Scalar(self, RF_ONE)

    def from_int(self, n: int) -> "Scalar":
        return Scalar(self, RationalFunction.from_gauss(GaussianRational(n, 0)))

    def from_rational(self, num: int, den: int = 1) -> "Scalar":
        return Scalar(self, RationalFunction.from_gauss(GaussianRational(mpq(num, den), 0)))

    def from_gauss(self, c: GaussianRational) -> "Scalar":
        return Scalar(self, RationalFunction.from_gauss(c))

    def i(self) -> "Scalar":
        return Scalar(self, RationalFunction.from_gauss(GR_I))

    def v_power(self, e: int) -> "Scalar":
        return Scalar(self, RationalFunction.v_power(e))

    def q_power(self, exponent) -> "Scalar":
        """q^exponent for a rational exponent whose denominator divides D."""
        e = mpq(exponent) * self.D
        if e.denominator != 1:
            raise QlieError(
                f"exponent {exponent} not representable with D = {self.D}"
            )
        return self.v_power(int(e))

    def radical(self) -> "Scalar":
        if self.radical_square is None:
            raise QlieError("no radical installed in this context")
        return Scalar(self, RF_ZERO, RF_ONE)

    def parse(self, text: str) -> "Scalar":
        return parse_scalar(self, text)


class Scalar:
    """Element rat + rad*C of the coefficient field (rad may be absent)."""

    __slots__ = ("ctx", "rat", "rad", "_hash")

    def __init__(self, ctx: ScalarContext, rat: RationalFunction,
                 rad: RationalFunction | None = None):
        self.ctx = ctx
        self.rat = rat
        if rad is not None and rad.is_zero():
            rad = None
        if rad is not None and ctx.radical_square is None:
            raise QlieError("radical part used before C^2 was installed")
        self.rad = rad
        self._hash = None

    # -- helpers -------------------------------------------------------------

    def _check(self, other: "Scalar") -> None:
        if self.ctx is not other.ctx:
            raise ContextMismatchError("scalars from different contexts")

    def is_zero(self) -> bool:
        return self.rat.is_zero() and self.rad is None

    def is_rational(self) -> bool:
        """True when there is no radical part."""
        return self.rad is None

    # -- field operations ------------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        if self.rad is None and other.rad is None:
            return Scalar(self.ctx, self.rat + other.rat)
        a = self.rad if self.rad is not None else RF_ZERO
        b = other.rad if other.rad is not None else RF_ZERO
        return Scalar(self.ctx, self.rat + other.rat, a + b)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __neg__(self) -> "Scalar":
        return Scalar(
            self.ctx, -self.rat, None if self.rad is None else -self.rad
        )

    def __mul__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        if self.rad is None and other.rad is None:
            return Scalar(self.ctx, self.rat * other.rat)
        a0 = self.rat
        a1 = self.rad if self.rad is not None else RF_ZERO
        b0 = other.rat
        b1 = other.rad if other.rad is not None else RF_ZERO
        r = self.ctx.radical_square.rat
        return Scalar(
            self.ctx, a0 * b0 + a1 * b1 * r, a0 * b1 + a1 * b0
        )

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ArithmeticFieldError("division by zero scalar")
        if self.rad is None:
            return Scalar(self.ctx, self.rat.inverse())
        # rationalize with the radical conjugate: 1/(a + bC) = (a - bC)/(a^2 - b^2 R)
        r = self.ctx.radical_square.rat
        denom = self.rat * self.rat - self.rad * self.rad * r
        if denom.is_zero():
            raise ArithmeticFieldError(
                "scalar is a zero divisor against C^2 (division impossible)"
            )
        inv = denom.inverse()
        return Scalar(self.ctx, self.rat * inv, -(self.rad * inv))

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * other.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ctx.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.ctx is not other.ctx:
            return False
        if self.rat != other.rat:
            return False
        a = self.rad if self.rad is not None else RF_ZERO
        b = other.rad if other.rad is not None else RF_ZERO
        return a == b

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rat, self.rad))
        return self._hash

    # -- engine operations -----------------------------------------------------

    def qconj(self) -> "Scalar":
        """The ring automorphism v -> 1/v; C is fixed."""
        return Scalar(
            self.ctx,
            self.rat.qconj(),
            None if self.rad is None else self.rad.qconj(),
        )

    def classical_limit(self) -> "Scalar":
        """Exact value at v = 1, as a v-free scalar.  The radical is
        substituted by the recorded Gaussian branch of sqrt(C^2 at 1) when
        that square root exists in Q(i); otherwise it stays formal."""
        rat_val = RationalFunction.from_gauss(self.rat.eval_one())
        if self.rad is None:
            return Scalar(self.ctx, rat_val)
        rad_val = self.rad.eval_one()
        branch = self.ctx.radical_classical
        if branch is not None:
            return Scalar(
                self.ctx,
                rat_val + RationalFunction.from_gauss(rad_val * branch),
            )
        return Scalar(self.ctx, rat_val, RationalFunction.from_gauss(rad_val))

    def classical_gaussian(self) -> GaussianRational:
        """Classical limit as a Gaussian rational; error if a formal radical
        survives the substitution."""
        lim = self.classical_limit()
        if lim.rad is not None:
            raise QlieError(
                "classical limit keeps a formal radical: " + render_scalar(self)
            )
        num, den = lim.rat.num, lim.rat.den
        if den != {0: GR_ONE}:
            raise QlieError("internal: classical limit not constant")
        return num.get(0, GR_ZERO)

    def sqrt(self) -> "Scalar":
        """Square root of a radical-free scalar inside the field or its
        single-radical extension; raises SquareRootError otherwise."""
        if self.rad is not None:
            raise SquareRootError(render_scalar(self))
        if self.rat.is_zero():
            return self.ctx.zero()
        r = self.rat.sqrt()
        if r is not None:
            return Scalar(self.ctx, r)
        r = (-self.rat).sqrt()
        if r is not None:
            return Scalar(self.ctx, r) * self.ctx.i()
        if self.ctx.radical_square is not None:
            rr = self.ctx.radical_square.rat
            t = (self.rat / rr).sqrt()
            if t is not None:
                return Scalar(self.ctx, RF_ZERO, t)
            t = (-(self.rat / rr)).sqrt()
            if t is not None:
                return Scalar(self.ctx, RF_ZERO, t) * self.ctx.i()
        raise SquareRootError(render_scalar(self))

    def __repr__(self):
        return f"Scalar({render_scalar(self)})"


# ---------------------------------------------------------------------------
# Canonical text form.  Writer and parser round-trip bit-exactly.
#
#   scalar := "(" poly ")/(" poly ")" [ " + (" poly ")/(" poly ")*C" ]
#   poly   := term { (" + " | " - ") term }
#   term   := coeff | coeff "*v^" int | "v^" int | "-v^" int
#   coeff  := rat | rat "i" | "(" rat ("+"|"-") rat "i" ")"
#   rat    := ["-"] digits [ "/" digits ]
# ---------------------------------------------------------------------------

def _render_mpq(x) -> str:
    return str(x)


def _render_gauss(c: GaussianRational, lead_sign: bool) -> str:
    """Render c; if lead_sign, a '-' may be absorbed by the caller (the
    caller passes |c| semantics by pre-negating)."""
    if c.im == 0:
        return _render_mpq(c.re)
    if c.re == 0:
        return _render_mpq(c.im) + "i"
    im = c.im
    sign = "+" if im > 0 else "-"
    return f"({_render_mpq(c.re)}{sign}{_render_mpq(abs(im))}i)"


def render_poly(p: dict) -> str:
    if not p:
        return "0"
    parts = []
    for e in sorted(p, reverse=True):
        c = p[e]
        negative = c.im == 0 and c.re < 0
        body = -c if negative else c
        if e == 0:
            text = _render_gauss(body, True)
        elif body == GR_ONE:
            text = f"v^{e}"
        else:
            text = f"{_render_gauss(body, True)}*v^{e}"
        if not parts:
            parts.append(("-" if negative else "") + text)
        else:
            parts.append(("- " if negative else "+ ") + text)
    return " ".join(parts)


def render_scalar(s: Scalar) -> str:
    out = f"({render_poly(s.rat.num)})/({render_poly(s.rat.den)})"
    if s.rad is not None:
        out += f" + ({render_poly(s.rad.num)})/({render_poly(s.rad.den)})*C"
    return out


def render_q(s: Scalar, symbol: str = "q") -> str:
    """Human-oriented rendering with exponents shown as powers of q (possibly
    fractional); not meant to be parsed back."""

    def poly(p: dict, D: int) -> str:
        if not p:
            return "0"
        parts = []
        for e in sorted(p, reverse=True):
            c = p[e]
            negative = c.im == 0 and c.re < 0
            body = -c if negative else c
            if e == 0:
                text = _render_gauss(body, True)
            else:
                frac = mpq(e, D)
                if frac.denominator == 1:
                    k = frac.numerator
                    power = f"{symbol}^{k}" if k != 1 else symbol
                else:
                    power = f"{symbol}^({frac.numerator}/{frac.denominator})"
                text = power if body == GR_ONE else f"{_render_gauss(body, True)}*{power}"
            if not parts:
                parts.append(("-" if negative else "") + text)
            else:
                parts.append(("- " if negative else "+ ") + text)
        return " ".join(parts)

    D = s.ctx.D

    def part(rf: RationalFunction) -> str:
        if rf.den == {0: GR_ONE}:
            return poly(rf.num, D)
        return f"({poly(rf.num, D)})/({poly(rf.den, D)})"

    if s.rad is None:
        return part(s.rat)
    out = part(s.rat) if not s.rat.is_zero() else ""
    radpart = part(s.rad)
    if radpart == "1":
        tail = "C"
    else:
        tail = f"({radpart})*C" if " " in radpart or "/" in radpart else f"{radpart}*C"
    return f"{out} + {tail}" if out else tail


class _Tok:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, expected: str) -> None:
        if not self.text.startswith(expected, self.pos):
            raise QlieError(
                f"parse error at {self.pos} in {self.text!r}: expected {expected!r}"
            )
        self.pos += len(expected)

    def int_(self) -> int:
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.peek().isdigit():
            self.pos += 1
        if self.pos == start:
            raise QlieError(f"parse error at {start} in {self.text!r}: expected int")
        return int(self.text[start:self.pos])

    def rat(self):
        n = self.int_()
        if self.peek() == "/":
            self.pos += 1
            d = self.int_()
            return mpq(n, d)
        return mpq(n)


def _parse_coeff(t: _Tok) -> GaussianRational:
    if t.peek() == "(":
        # mixed complex: (re +/- im i)
        t.take("(")
        re = t.rat()
        sign = t.peek()
        if sign not in "+-":
            raise QlieError(f"parse error at {t.pos}: expected +/- in complex coeff")
        t.pos += 1
        im = t.rat()
        t.take("i)")
        return GaussianRational(re, im if sign == "+" else -im)
    val = t.rat()
    if t.peek() == "i":
        t.pos += 1
        return GaussianRational(0, val)
    return GaussianRational(val, 0)


def _parse_poly(t: _Tok, stop: str) -> dict:
    out: dict = {}
    first = True
    while True:
        sign = 1
        if not first:
            if t.text.startswith(" + ", t.pos):
                t.pos += 3
            elif t.text.startswith(" - ", t.pos):
                t.pos += 3
                sign = -1
            else:
                break
        first = False
        neg_term = False
        if t.peek() == "-" and t.text.startswith("-v^", t.pos):
            neg_term = True
            t.pos += 1
        if t.peek() == "v":
            coeff = GR_ONE
        else:
            coeff = _parse_coeff(t)
            if t.text.startswith("*v^", t.pos):
                t.pos += 1  # consume '*', leave 'v^...' for below
        e = 0
        if t.peek() == "v":
            t.take("v^")
            e = t.int_()
        c = coeff
        if neg_term:
            c = -c
        if sign < 0:
            c = -c
        if not c.is_zero():
            prev = out.get(e)
            out[e] = c if prev is None else prev + c
            if out[e].is_zero():
                del out[e]
        if t.peek() == stop or t.pos >= len(t.text):
            break
    return {e: c for e, c in out.items() if not c.is_zero()}


def _parse_rf(t: _Tok) -> RationalFunction:
    t.take("(")
    num = _parse_poly(t, ")")
    t.take(")/(")
    den = _parse_poly(t, ")")
    t.take(")")
    return RationalFunction(num, den)


def parse_scalar(ctx: ScalarContext, text: str) -> Scalar:
    """Inverse of render_scalar (bit-exact round trip on canonical text)."""
    t = _Tok(text)
    rat = _parse_rf(t)
    rad = None
    if t.text.startswith(" + ", t.pos):
        t.pos += 3
        rad = _parse_rf(t)
        t.take("*C")
    if t.pos != len(t.text):
        raise QlieError(f"trailing input at {t.pos} in {text!r}")
    return Scalar(ctx, rat, rad)
