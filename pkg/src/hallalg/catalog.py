"""Rule tables for the ten Hall-type algebras built over one quiver category.

Conventions shared by every table:

* ``h(A, B)`` is the untwisted Hall product of object classes, the list of
  ``(C, |Ext^1(A,B)_C| / |Hom(A,B)|)``.
* ``G(M, N)`` is the adjacent-swap weight
  ``gamma_{AB}^{MN} a_A a_B / (a_M a_N)`` for a left letter of class B in
  degree n and a right letter of class A in degree n + 1.
* ``e(x, y)`` is the Euler exponent on K0 and ``s(x, y) = e(x, y) + e(y, x)``;
  every twist is ``v**k`` for an integer ``k`` built from these.

Torus letters sit left of object letters in every normal form except the
extended twisted Hall algebra, whose basis is ``[B] k_alpha``.
"""

from __future__ import annotations

from .engine import AlgebraSpec, K, Letter, Z, U, Y, Word
from .quiver import IsoClass, QuiverCategory, k0_add, k0_neg, k0_scale, k0_sub
from .scalars import TwistScalar, v_power

ALGEBRA_IDS = {
    "h-tw-e": "H_tw_e",
    "mh": "MH_plain",
    "mh-ctw": "MH_ctw",
    "mh-tw": "MH_tw",
    "mh-rtw": "MH_rtw",
    "dh": "DH",
    "dh-tw": "DH_tw",
    "dh-ce-tw": "DH_ce_tw",
    "lattice": "L_star",
    "naive": "N_naive",
}


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


class _Table(AlgebraSpec):
    """Shared plumbing: Euler exponents, Hall sums and gamma sums."""

    obj = "U"

    def e(self, a, b) -> int:
        return self.cat.quiver.euler_exponent(_k0(a), _k0(b))

    def s(self, a, b) -> int:
        return self.e(a, b) + self.e(b, a)

    def vp(self, k: int) -> TwistScalar:
        return v_power(self.q, k)

    def hall(self, a: IsoClass, b: IsoClass, twist: int, deg) -> list:
        out = []
        for c, coef in self.cat.hall_coefficients(a, b):
            out.append((self.vp(twist) * coef, (Letter(self.obj, c, deg),)))
        return out

    def gamma_sum(self, a: IsoClass, b: IsoClass, n: int, build) -> list:
        """Terms of ``X_{B,n} X_{A,n+1}``; ``build(M, N)`` gives (twist exponent, word)."""
        out = []
        for m, nn, g in self.cat.gamma_terms(a, b):
            k, word = build(m, nn)
            out.append((self.vp(k) * g, word))
        return out


def _k0(x):
    if isinstance(x, IsoClass):
        return x.dim
    if isinstance(x, Letter):
        return x.k0
    return tuple(x)


class _GradedTorusTable(_Table):
    """Algebras with graded U and graded K letters: normal form
    K(high) ... K(low) U(high) ... U(low)."""

    admitted = frozenset({("U", True), ("K", True)})

    def slot(self, x: Letter) -> tuple:
        return (0 if x.kind == "K" else 1, -x.degree)

    def reduce_pair(self, x: Letter, y: Letter):
        if x.kind == "K" and y.kind == "K":
            if x.degree == y.degree:
                return [(self.kk_merge(x.payload, y.payload), (K(k0_add(x.payload, y.payload), x.degree),))]
            return [(self.kk_swap(x.payload, x.degree, y.payload, y.degree), (y, x))]
        if y.kind == "K":
            return [(self.uk_swap(x.payload, x.degree, y.payload, y.degree), (y, x))]
        a, b = x.payload, y.payload
        if x.degree == y.degree:
            return self.hall(a, b, self.merge_twist(a, b), x.degree)
        n, m = x.degree, y.degree  # left letter B = a in degree n < m
        if m == n + 1:
            return self.adjacent(y.payload, x.payload, n)
        return [(self.far_swap(x.payload, n, y.payload, m), (y, x))]

    # defaults are overridden per algebra
    def kk_merge(self, a, b) -> TwistScalar:
        return self.vp(0)

    def kk_swap(self, a, n, b, m) -> TwistScalar:
        return self.vp(0)

    def far_swap(self, b, n, a, m) -> TwistScalar:
        """Scalar c in U_{b,n} U_{a,m} = c U_{a,m} U_{b,n}, m >= n + 2."""
        return self.vp(0)


class MHPlain(_GradedTorusTable):
    algebra_id = "MH_plain"

    def merge_twist(self, a, b):
        return 0

    def kk_merge(self, a, b):
        return self.vp(-2 * self.e(a, b))

    def kk_swap(self, a, n, b, m):
        # K_{a,n} K_{b,m}, m > n
        return self.vp(2 * self.e(b, a)) if m == n + 1 else self.vp(0)

    def uk_swap(self, a, n, alpha, m):
        if m == n:
            return self.vp(-2 * self.e(a, alpha))
        if m == n + 1:
            return self.vp(2 * self.e(alpha, a))
        return self.vp(0)

    def adjacent(self, a, b, n):
        def build(m, nn):
            d = k0_sub(b.dim, m.dim)
            return 2 * self.e(d, m), (K(d, n + 1), U(nn, n + 1), U(m, n))
        return self.gamma_sum(a, b, n, build)


class MHComponentwise(_GradedTorusTable):
    algebra_id = "MH_ctw"

    def merge_twist(self, a, b):
        return self.e(a, b)

    def kk_swap(self, a, n, b, m):
        return self.vp(self.s(a, b)) if m == n + 1 else self.vp(0)

    def uk_swap(self, a, n, alpha, m):
        if m == n:
            return self.vp(-self.s(alpha, a))
        if m == n + 1:
            return self.vp(self.s(alpha, a))
        return self.vp(0)

    def adjacent(self, a, b, n):
        obj = self.obj

        def build(m, nn):
            d = k0_sub(b.dim, m.dim)
            k = self.e(k0_sub(m.dim, nn.dim), k0_sub(m.dim, b.dim))
            return k, (Letter(obj, nn, n + 1), Letter(obj, m, n), K(d, n + 1))
        return self.gamma_sum(a, b, n, build)


class NaiveLattice(MHComponentwise):
    """Generators Y^{(n)} and K^{(n)}; same straightening data as the
    componentwise twisted table, under a different letter kind."""

    algebra_id = "N_naive"
    obj = "Y"
    admitted = frozenset({("Y", True), ("K", True)})


class MHTwisted(_GradedTorusTable):
    algebra_id = "MH_tw"

    def merge_twist(self, a, b):
        return 2 * self.e(a, b)

    def uk_swap(self, a, n, alpha, m):
        return self.vp(0)

    def adjacent(self, a, b, n):
        def build(m, nn):
            d = k0_sub(b.dim, m.dim)
            return -2 * self.e(b, a), (U(nn, n + 1), U(m, n), K(d, n + 1))
        return self.gamma_sum(a, b, n, build)

    def far_swap(self, b, n, a, m):
        return self.vp(2 * self.e(b, a) * _sign(m - n))


class MHRelative(_GradedTorusTable):
    algebra_id = "MH_rtw"

    def merge_twist(self, a, b):
        return self.e(a, b)

    def uk_swap(self, a, n, alpha, m):
        return self.vp(-self.s(alpha, a) * _sign(n - m))

    def adjacent(self, a, b, n):
        def build(m, nn):
            d = k0_sub(b.dim, m.dim)
            k = self.e(k0_sub(m.dim, nn.dim), k0_sub(m.dim, b.dim))
            return k, (U(nn, n + 1), U(m, n), K(d, n + 1))
        return self.gamma_sum(a, b, n, build)

    def far_swap(self, b, n, a, m):
        return self.vp(self.s(a, b) * _sign(n - m) * (n - m + 1))


class _DerivedTable(_Table):
    """Z letters in strictly descending degree, preceded by a torus part."""

    obj = "Z"

    def reduce_z(self, x: Letter, y: Letter):
        a, b = x.payload, y.payload
        if x.degree == y.degree:
            return self.hall(a, b, self.merge_twist(a, b), x.degree)
        n, m = x.degree, y.degree
        if m == n + 1:
            return self.adjacent(y.payload, x.payload, n)
        return [(self.far_swap(x.payload, n, y.payload, m), (y, x))]


class DerivedHall(_DerivedTable):
    algebra_id = "DH"
    admitted = frozenset({("Z", True)})

    def slot(self, x):
        return (1, -x.degree)

    def reduce_pair(self, x, y):
        return self.reduce_z(x, y)

    def merge_twist(self, a, b):
        return 0

    def adjacent(self, a, b, n):
        return self.gamma_sum(a, b, n, lambda m, nn: (-2 * self.e(nn, m), (Z(nn, n + 1), Z(m, n))))

    def far_swap(self, b, n, a, m):
        return self.vp(2 * self.e(a, b) * _sign(m - n))


class DerivedHallTwisted(_DerivedTable):
    """Twisted derived Hall algebra, extended by ungraded torus letters."""

    algebra_id = "DH_tw"
    admitted = frozenset({("Z", True), ("k", False)})

    def slot(self, x):
        return (0,) if x.kind == "k" else (1, -x.degree)

    def reduce_pair(self, x, y):
        if x.kind == "k":
            return [(self.vp(0), (K(k0_add(x.payload, y.payload)),))]
        if y.kind == "k":
            return [(self.zk_swap(x.payload, x.degree, y.payload), (y, x))]
        return self.reduce_z(x, y)

    def zk_swap(self, a, n, alpha):
        return self.vp(-self.s(a, alpha) * _sign(n))

    def merge_twist(self, a, b):
        return self.e(a, b)

    def adjacent(self, a, b, n):
        def build(m, nn):
            return -self.e(b, a) - self.e(nn, m), (Z(nn, n + 1), Z(m, n))
        return self.gamma_sum(a, b, n, build)

    def far_swap(self, b, n, a, m):
        return self.vp(self.s(a, b) * _sign(n - m))


class LatticeDual(DerivedHallTwisted):
    algebra_id = "L_star"

    def adjacent(self, a, b, n):
        def build(m, nn):
            d = k0_scale(_sign(n + 1), k0_sub(b.dim, m.dim))
            k = self.e(k0_sub(m.dim, nn.dim), k0_sub(m.dim, b.dim))
            return k, (Z(nn, n + 1), Z(m, n), K(d))
        return self.gamma_sum(a, b, n, build)

    def far_swap(self, b, n, a, m):
        return self.vp(self.s(a, b) * _sign(n - m) * (n - m + 1))


class DerivedHallComplete(_DerivedTable):
    """Twisted derived Hall algebra with a graded torus letter per degree."""

    algebra_id = "DH_ce_tw"
    admitted = frozenset({("Z", True), ("K", True)})

    def slot(self, x):
        return (0 if x.kind == "K" else 1, -x.degree)

    def reduce_pair(self, x, y):
        if x.kind == "K" and y.kind == "K":
            if x.degree == y.degree:
                return [(self.vp(0), (K(k0_add(x.payload, y.payload), x.degree),))]
            n, m = x.degree, y.degree
            c = self.vp(self.s(x.payload, y.payload)) if m == n + 1 else self.vp(0)
            return [(c, (y, x))]
        if y.kind == "K":
            return [(self.zk_swap(x.payload, x.degree, y.payload, y.degree), (y, x))]
        return self.reduce_z(x, y)

    def zk_swap(self, a, m, alpha, n):
        """Scalar c with Z_a^{[m]} K_alpha^{[n]} = c K_alpha^{[n]} Z_a^{[m]}."""
        s = self.s(alpha, a)
        if n == m:
            return self.vp(-s) if n in (0, 1) else self.vp(0)
        if n == m + 1:
            return self.vp(s) if m in (0, -1) else self.vp(0)
        if n == m - 1:
            return self.vp(s) if n in (0, 1) else self.vp(0)
        if n == 0:
            return self.vp(-s * _sign(m))
        if n == 1:
            return self.vp(s * _sign(m))
        return self.vp(0)

    merge_twist = DerivedHallTwisted.merge_twist
    adjacent = DerivedHallTwisted.adjacent
    far_swap = DerivedHallTwisted.far_swap


class ExtendedTwistedHall(_Table):
    """Object letters [B] (ungraded U) and torus letters k_alpha; basis [B] k_alpha."""

    algebra_id = "H_tw_e"
    admitted = frozenset({("U", False), ("k", False)})

    def slot(self, x):
        return (1,) if x.kind == "k" else (0,)

    def reduce_pair(self, x, y):
        if x.kind == "k" and y.kind == "k":
            return [(self.vp(0), (K(k0_add(x.payload, y.payload)),))]
        if x.kind == "k":
            return [(self.vp(self.s(x.payload, y.payload)), (y, x))]
        return self.hall(x.payload, y.payload, self.e(x.payload, y.payload), None)


SPEC_CLASSES = {
    "H_tw_e": ExtendedTwistedHall,
    "MH_plain": MHPlain,
    "MH_ctw": MHComponentwise,
    "MH_tw": MHTwisted,
    "MH_rtw": MHRelative,
    "DH": DerivedHall,
    "DH_tw": DerivedHallTwisted,
    "DH_ce_tw": DerivedHallComplete,
    "L_star": LatticeDual,
    "N_naive": NaiveLattice,
}


def resolve_id(algebra_id: str) -> str:
    if algebra_id in SPEC_CLASSES:
        return algebra_id
    if algebra_id in ALGEBRA_IDS:
        return ALGEBRA_IDS[algebra_id]
    raise KeyError(f"unknown algebra id {algebra_id!r}; expected one of {sorted(ALGEBRA_IDS)}")


def make_spec(algebra_id: str, cat: QuiverCategory, **kwargs) -> AlgebraSpec:
    return SPEC_CLASSES[resolve_id(algebra_id)](cat, **kwargs)


def cli_name(algebra_id: str) -> str:
    inv = {v: k for k, v in ALGEBRA_IDS.items()}
    return inv[resolve_id(algebra_id)]


# ---------------------------------------------------------------------------
# negative controls: one corrupted twist per family of tables
# ---------------------------------------------------------------------------

def mutated_spec(algebra_id: str, cat: QuiverCategory, **kwargs) -> AlgebraSpec:
    """A copy of the table with the sign of one twist exponent flipped."""
    base = SPEC_CLASSES[resolve_id(algebra_id)]
    if base is ExtendedTwistedHall:
        class Mutant(base):
            def reduce_pair(self, x, y):
                if x.kind == "k" and y.kind != "k":
                    return [(self.vp(-self.s(x.payload, y.payload)), (y, x))]
                return super().reduce_pair(x, y)
    elif base is DerivedHall:
        class Mutant(base):
            def adjacent(self, a, b, n):
                return self.gamma_sum(a, b, n, lambda m, nn: (2 * self.e(nn, m), (Z(nn, n + 1), Z(m, n))))
    elif base is MHPlain:
        class Mutant(base):
            def uk_swap(self, a, n, alpha, m):
                if m == n:
                    return self.vp(2 * self.e(a, alpha))
                return super().uk_swap(a, n, alpha, m)
    else:
        class Mutant(base):
            def merge_twist(self, a, b):
                return -super().merge_twist(a, b)
    Mutant.algebra_id = base.algebra_id + "~mutant"
    Mutant.__name__ = base.__name__ + "Mutant"
    return Mutant(cat, **kwargs)


# ---------------------------------------------------------------------------
# bilinear forms on graded words (complexes viewed componentwise)
# ---------------------------------------------------------------------------

def components(x) -> dict:
    """{degree: K0 class} of a graded letter or word.

    A stalk letter contributes its class in its degree; a graded torus letter
    in degree n is the two-term acyclic complex with components in n-1 and n.
    """
    letters = (x,) if isinstance(x, Letter) else tuple(x)
    out: dict = {}
    for g in letters:
        if g.degree is None:
            raise ValueError(f"{g!r} is ungraded")
        if g.kind == "K":
            parts = [(g.degree - 1, g.payload), (g.degree, g.payload)]
        else:
            parts = [(g.degree, g.k0)]
        for d, a in parts:
            out[d] = k0_add(out[d], a) if d in out else tuple(a)
    return out


def cw_exponent(cat: QuiverCategory, x, y) -> int:
    """Exponent k with componentwise Euler form = v**k."""
    cx, cy = components(x), components(y)
    return sum(cat.quiver.euler_exponent(cx[i], cy[i]) for i in cx if i in cy)


def cw_euler(cat: QuiverCategory, x, y) -> TwistScalar:
    return v_power(cat.q, cw_exponent(cat, x, y))


def full_exponent(cat: QuiverCategory, x, y) -> int:
    """Exponent k with the Euler form of bounded complexes = q**k.

    For complexes of a hereditary category, ``<X, Y>`` depends only on the
    componentwise classes and equals ``prod_{i <= j} <X^i, Y^j>^{(-1)^{j-i}}``.
    """
    cx, cy = components(x), components(y)
    return sum(cat.quiver.euler_exponent(cx[i], cy[j]) * _sign(j - i)
               for i in cx for j in cy if i <= j)


def rel_exponent(cat: QuiverCategory, x, y) -> int:
    """Exponent k with relative Euler form = v**k."""
    cx, cy = components(x), components(y)
    return sum(cat.quiver.euler_exponent(cx[i], cy[j]) * _sign(j - i + 1) * (j - i + 1)
               for i in cx for j in cy)


def rel_euler(cat: QuiverCategory, x, y) -> TwistScalar:
    return v_power(cat.q, rel_exponent(cat, x, y))


def triangulated_exponent(cat: QuiverCategory, x, y) -> int:
    """Exponent k with the twist of the twisted derived Hall algebra = v**k,
    for stalk letters: ``<Z_B^n, Z_A^m>_t = sqrt(<B, A>^{(-1)^{m-n}})``."""
    cx, cy = components(x), components(y)
    return sum(cat.quiver.euler_exponent(cx[i], cy[j]) * _sign(j - i) for i in cx for j in cy)
