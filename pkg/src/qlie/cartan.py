"""Cartan data for the in-scope algebras: rank-1 sl2 and the rank-2 pair
a2 (two short roots, diagram flip) and c2 (one short, one long root, no
diagram symmetry).

Weights live in the rational span of the simple roots.  The bilinear form is
the symmetrized Cartan form (alpha_i, alpha_j) = d_i * a_ij, which is the
normalization under which the square of the antipode is conjugation by the
distinguished torus element; see ``qlie.uq``.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import QlieError


class WeightVector:
    """Rational vector over the simple-root basis; immutable and hashable."""

    __slots__ = ("coords", "_hash")

    def __init__(self, coords):
        self.coords = tuple(mpq(c) for c in coords)
        self._hash = None

    def __add__(self, other):
        return WeightVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return WeightVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return WeightVector(tuple(-a for a in self.coords))

    def scale(self, c):
        c = mpq(c)
        return WeightVector(tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coords)
        return self._hash

    def __repr__(self):
        return "WeightVector(%s)" % (",".join(str(c) for c in self.coords))

    def height(self):
        return sum(self.coords)


class CartanData:
    """Static data of one algebra: Cartan matrix, symmetrizers, roots, the
    convex order used for presentation, and the diagram automorphism."""

    def __init__(self, name, cartan_matrix, symmetrizers, positive_root_coords,
                 tau, default_d, weight_denominator):
        self.name = name
        self.rank = len(cartan_matrix)
        self.cartan_matrix = tuple(tuple(row) for row in cartan_matrix)
        self.d = tuple(symmetrizers)
        for i in range(self.rank):
            for j in range(self.rank):
                if self.d[i] * self.cartan_matrix[i][j] != self.d[j] * self.cartan_matrix[j][i]:
                    raise QlieError("symmetrizers do not symmetrize the Cartan matrix")
        self.positive_roots = tuple(WeightVector(c) for c in positive_root_coords)
        self.roots = self.positive_roots + tuple(-a for a in self.positive_roots)
        self.simple_roots = tuple(
            WeightVector([1 if j == i else 0 for j in range(self.rank)])
            for i in range(self.rank)
        )
        for alpha in self.simple_roots:
            if alpha not in self.positive_roots:
                raise QlieError("simple roots must appear among the positive roots")
        half = mpq(1, 2)
        acc = WeightVector([0] * self.rank)
        for a in self.positive_roots:
            acc = acc + a
        self.rho = acc.scale(half)
        self.tau_perm = tuple(tau)  # permutation of {0..rank-1}
        self.default_d = default_d  # default root order D of v = q^(1/D)
        self.weight_denominator = weight_denominator  # torus-lattice bound
        self._root_set = set(self.roots)
        self.dimension = len(self.roots) + self.rank
        self.highest_root = max(
            self.positive_roots, key=lambda a: (a.height(), a.coords)
        )
        # default cap on single-word heights during rewriting: products of two
        # module elements reach twice the highest-root height
        self.default_degree_cap = 2 * int(self.highest_root.height()) + 1

    # -- bilinear form -------------------------------------------------------

    def pairing(self, lam: WeightVector, mu: WeightVector):
        """Symmetrized Cartan form, (alpha_i, alpha_j) = d_i a_ij."""
        acc = mpq(0)
        for i, ci in enumerate(lam.coords):
            if ci == 0:
                continue
            for j, cj in enumerate(mu.coords):
                if cj == 0:
                    continue
                acc += ci * cj * self.d[i] * self.cartan_matrix[i][j]
        return acc

    def coroot_pairing(self, lam: WeightVector, i: int):
        """<lam, alpha_i^vee> = 2 (lam, alpha_i)/(alpha_i, alpha_i)."""
        return self.pairing(lam, self.simple_roots[i]) / self.d[i]

    # -- root bookkeeping ----------------------------------------------------

    def is_root(self, w: WeightVector) -> bool:
        return w in self._root_set

    def root_index(self, w: WeightVector) -> int:
        return self.roots.index(w)

    def fundamental_weights(self) -> tuple[WeightVector, ...]:
        """Fundamental weights in simple-root coordinates."""
        n = self.rank
        out = []
        for k in range(n):
            # solve sum_i c_i <alpha_i, alpha_j^vee> = delta_kj
            from fractions import Fraction

            a = [[Fraction(int(self.cartan_matrix[j][i])) for i in range(n)]
                 for j in range(n)]
            b = [Fraction(1) if j == k else Fraction(0) for j in range(n)]
            coeffs = _solve_fraction(a, b)
            out.append(WeightVector([mpq(c.numerator, c.denominator) for c in coeffs]))
        return tuple(out)

    def tau(self, w: WeightVector) -> WeightVector:
        return WeightVector([w.coords[self.tau_perm.index(i)] for i in range(self.rank)])

    def tau_is_trivial(self) -> bool:
        return self.tau_perm == tuple(range(self.rank))

    def root_label(self, w: WeightVector) -> str:
        """Readable name such as 'a1', 'a1+a2', '2a1+a2', '-a1'."""
        parts = []
        for i, c in enumerate(w.coords):
            if c == 0:
                continue
            mag = abs(c)
            body = f"a{i+1}" if mag == 1 else f"{mag}a{i+1}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"CartanData({self.name})"


def _solve_fraction(a, b):
    """Tiny Fraction-valued Gaussian elimination (rank x rank only)."""
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        f = m[c][c]
        m[c] = [x / f for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                g = m[i][c]
                m[i] = [x - g * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def sl2() -> CartanData:
    return CartanData(
        name="sl2",
        cartan_matrix=[[2]],
        symmetrizers=[1],
        positive_root_coords=[(1,)],
        tau=[0],
        default_d=2,
        weight_denominator=2,
    )


def a2() -> CartanData:
    # convex order of the positive roots from the reduced word (1, 2, 1)
    return CartanData(
        name="a2",
        cartan_matrix=[[2, -1], [-1, 2]],
        symmetrizers=[1, 1],
        positive_root_coords=[(1, 0), (1, 1), (0, 1)],
        tau=[1, 0],
        default_d=6,
        weight_denominator=6,
    )


def c2() -> CartanData:
    # convex order from the reduced word (1, 2, 1, 2)
    return CartanData(
        name="c2",
        cartan_matrix=[[2, -2], [-1, 2]],
        symmetrizers=[1, 2],
        positive_root_coords=[(1, 0), (2, 1), (1, 1), (0, 1)],
        tau=[0, 1],
        default_d=2,
        weight_denominator=2,
    )


ALGEBRAS = {"sl2": sl2, "a2": a2, "c2": c2}


def by_name(name: str) -> CartanData:
    try:
        return ALGEBRAS[name]()
    except KeyError:
        raise QlieError(f"unknown algebra {name!r}; expected one of {sorted(ALGEBRAS)}")
