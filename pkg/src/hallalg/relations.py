"""Defining relations of each algebra, instantiated over a finite window.

Each family yields ``(family, lhs, rhs)`` triples of unnormalized elements.
Coefficients are rebuilt here from the presentations, with Hall and gamma
counts taken from independent backend routines (direct cocycle counting and
the image factorization of four-term sequences), so a passing suite is a
genuine check of the rule tables rather than a restatement of them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .engine import AlgebraSpec, Element, K, Letter, U, Y, Z
from .quiver import IsoClass, QuiverCategory, k0_add, k0_neg, k0_scale, k0_sub
from .scalars import v_power


@dataclass(frozen=True)
class Window:
    """Finite slice of the generator set: classes within ``bound``, degrees in
    ``[lo, hi]`` and torus classes with coordinates in ``[-radius, radius]``."""

    bound: tuple
    lo: int
    hi: int
    radius: int

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def k0_grid(self, rank: int) -> list[tuple]:
        return list(itertools.product(range(-self.radius, self.radius + 1), repeat=rank))

    def classes(self, cat: QuiverCategory) -> list[IsoClass]:
        return [c for c in cat.enumerate(self.bound) if not c.is_zero]

    def fits(self, *classes: IsoClass) -> bool:
        total = (0,) * len(self.bound)
        for c in classes:
            total = k0_add(total, c.dim)
        return all(x <= b for x, b in zip(total, self.bound))

    def to_json(self) -> dict:
        return {"bound": list(self.bound), "degrees": [self.lo, self.hi], "k0_radius": self.radius}


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


class _Builder:
    def __init__(self, cat: QuiverCategory, window: Window):
        self.cat = cat
        self.q = cat.q
        self.w = window
        self.cls = window.classes(cat)
        self.grid = window.k0_grid(cat.quiver.n)

    def e(self, a, b) -> int:
        return self.cat.quiver.euler_exponent(_k0(a), _k0(b))

    def s(self, a, b) -> int:
        return self.e(a, b) + self.e(b, a)

    def word(self, letters, coeff=1) -> Element:
        return Element.word(self.q, letters, coeff)

    def hall_sum(self, a, b, twist: int, make) -> Element:
        """sum_C v^twist |Ext^1(a,b)_C| / |Hom(a,b)| make(C), counted directly."""
        out = Element(self.q)
        hom = self.q ** self.cat.hom_dim(a, b)
        for c, count in self.cat.extension_counts_direct(a, b).items():
            out = out + self.word(make(c), v_power(self.q, twist) * Fraction(count, hom))
        return out

    def gamma_sum(self, a, b, build) -> Element:
        """sum_{M,N} gamma a_A a_B/(a_M a_N) v^k word, where build(M, N) = (k, word)."""
        out = Element(self.q)
        for md in itertools.product(*(range(x + 1) for x in b.dim)):
            nd = k0_sub(a.dim, k0_sub(b.dim, md))
            if any(x < 0 for x in nd):
                continue
            for m in self.cat.classes_of_dim(md):
                for n in self.cat.classes_of_dim(nd):
                    g = self.cat.gamma_via_image(a, b, m, n)
                    if not g:
                        continue
                    coef = g * self.cat.aut_count(a) * self.cat.aut_count(b) / (
                        self.cat.aut_count(m) * self.cat.aut_count(n))
                    k, word = build(m, n)
                    out = out + self.word(word, v_power(self.q, k) * coef)
        return out

    # -- instance iterators -------------------------------------------------------
    def pairs(self, merge: bool):
        for a in self.cls:
            for b in self.cls:
                if not merge or self.w.fits(a, b):
                    yield a, b

    def degree_pairs(self, gap):
        for n in self.w.degrees():
            for m in self.w.degrees():
                if gap(n, m):
                    yield n, m


def _k0(x):
    if isinstance(x, IsoClass):
        return x.dim
    return tuple(x)


# ---------------------------------------------------------------------------
# graded-torus presentations (U or Y letters with K_{alpha,n})
# ---------------------------------------------------------------------------

def _modified(b: _Builder, obj: str, twists: dict) -> Iterator:
    """Shared shape of the four graded-torus presentations.

    ``twists`` maps a relation name to a function returning the v-exponent
    (or ``None`` when the family is absent).
    """
    L = lambda c, n: Letter(obj, c, n)  # noqa: E731
    degs = list(b.w.degrees())
    for n in degs:
        for a, c in b.pairs(merge=True):
            yield ("same-degree product",
                   b.word([L(a, n), L(c, n)]),
                   b.hall_sum(a, c, twists["merge"](a, c), lambda x: [L(x, n)]))
        for al in b.grid:
            for a in b.cls:
                yield ("torus past object, same degree",
                       b.word([K(al, n), L(a, n)]),
                       b.word([L(a, n), K(al, n)], v_power(b.q, twists["KU_same"](al, a))))
            for be in b.grid:
                yield ("torus product, same degree",
                       b.word([K(al, n), K(be, n)]),
                       b.word([K(k0_add(al, be), n)], v_power(b.q, twists["KK_same"](al, be))))
    for n in degs:
        if n + 1 not in degs:
            continue
        for al in b.grid:
            for a in b.cls:
                yield ("object past next-degree torus",
                       b.word([L(a, n), K(al, n + 1)]),
                       b.word([K(al, n + 1), L(a, n)], v_power(b.q, twists["UK_up"](al, a))))
                yield ("torus past next-degree object",
                       b.word([K(al, n), L(a, n + 1)]),
                       b.word([L(a, n + 1), K(al, n)], v_power(b.q, twists["KU_up"](al, a))))
            for be in b.grid:
                yield ("torus past next-degree torus",
                       b.word([K(al, n), K(be, n + 1)]),
                       b.word([K(be, n + 1), K(al, n)], v_power(b.q, twists["KK_up"](al, be))))
        for a, c in b.pairs(merge=False):
            # left letter of class c in degree n, right of class a in degree n + 1
            yield ("adjacent-degree objects",
                   b.word([L(c, n), L(a, n + 1)]),
                   b.gamma_sum(a, c, lambda m, nn: twists["adjacent"](a, c, m, nn, n)))
    for n, m in b.degree_pairs(lambda n, m: abs(m - n) >= 2):
        for a, c in b.pairs(merge=False):
            k = twists["UU_far"](a, m, c, n)
            if k is not None:
                yield ("distant-degree objects",
                       b.word([L(c, n), L(a, m)]), b.word([L(a, m), L(c, n)], v_power(b.q, k)))
        for al in b.grid:
            for a in b.cls:
                yield ("torus past distant object",
                       b.word([K(al, m), L(a, n)]),
                       b.word([L(a, n), K(al, m)], v_power(b.q, twists["KU_far"](al, m, a, n))))
            for be in b.grid:
                yield ("distant torus letters",
                       b.word([K(al, m), K(be, n)]), b.word([K(be, n), K(al, m)]))


def _plain_twists(b: _Builder) -> dict:
    e = b.e
    return {
        "merge": lambda a, c: 0,
        "KU_same": lambda al, a: 2 * e(a, al),
        "KK_same": lambda al, be: -2 * e(al, be),
        "UK_up": lambda al, a: 2 * e(al, a),
        "KU_up": lambda al, a: 0,
        "KK_up": lambda al, be: 2 * e(be, al),
        "adjacent": lambda a, c, m, nn, n: (
            2 * e(k0_sub(c.dim, m.dim), m.dim),
            [K(k0_sub(c.dim, m.dim), n + 1), U(nn, n + 1), U(m, n)]),
        "UU_far": lambda a, m, c, n: 0,
        "KU_far": lambda al, m, a, n: 0,
    }


def _componentwise_twists(b: _Builder, obj: str) -> dict:
    e, s = b.e, b.s
    L = lambda c, n: Letter(obj, c, n)  # noqa: E731
    return {
        "merge": lambda a, c: e(a, c),
        "KU_same": lambda al, a: s(al, a),
        "KK_same": lambda al, be: 0,
        "UK_up": lambda al, a: s(al, a),
        "KU_up": lambda al, a: 0,
        "KK_up": lambda al, be: s(al, be),
        "adjacent": lambda a, c, m, nn, n: (
            e(k0_sub(m.dim, nn.dim), k0_sub(m.dim, c.dim)),
            [L(nn, n + 1), L(m, n), K(k0_sub(c.dim, m.dim), n + 1)]),
        "UU_far": lambda a, m, c, n: 0,
        "KU_far": lambda al, m, a, n: 0,
    }


def _twisted_twists(b: _Builder) -> dict:
    e = b.e
    return {
        "merge": lambda a, c: 2 * e(a, c),
        "KU_same": lambda al, a: 0,
        "KK_same": lambda al, be: 0,
        "UK_up": lambda al, a: 0,
        "KU_up": lambda al, a: 0,
        "KK_up": lambda al, be: 0,
        "adjacent": lambda a, c, m, nn, n: (
            -2 * e(c, a), [U(nn, n + 1), U(m, n), K(k0_sub(c.dim, m.dim), n + 1)]),
        # stated for the left letter in the lower degree
        "UU_far": lambda a, m, c, n: 2 * e(c, a) * _sign(m - n) if m > n else None,
        "KU_far": lambda al, m, a, n: 0,
    }


def _relative_families(b: _Builder) -> Iterator:
    e, s = b.e, b.s
    degs = list(b.w.degrees())
    for n in degs:
        for m in degs:
            for al in b.grid:
                for be in b.grid:
                    if m == n:
                        yield ("torus product, same degree",
                               b.word([K(al, n), K(be, n)]), b.word([K(k0_add(al, be), n)]))
                    else:
                        yield ("torus letters commute",
                               b.word([K(al, n), K(be, m)]), b.word([K(be, m), K(al, n)]))
                for a in b.cls:
                    # K_{alpha,m} U_{A,n}
                    yield ("torus past object",
                           b.word([K(al, m), U(a, n)]),
                           b.word([U(a, n), K(al, m)], v_power(b.q, s(al, a) * _sign(n - m))))
    for n in degs:
        for a, c in b.pairs(merge=True):
            yield ("same-degree product", b.word([U(a, n), U(c, n)]),
                   b.hall_sum(a, c, e(a, c), lambda x: [U(x, n)]))
    for n in degs:
        if n + 1 not in degs:
            continue
        for a, c in b.pairs(merge=False):
            yield ("adjacent-degree objects", b.word([U(c, n), U(a, n + 1)]),
                   b.gamma_sum(a, c, lambda m, nn: (
                       e(k0_sub(m.dim, nn.dim), k0_sub(m.dim, c.dim)),
                       [U(nn, n + 1), U(m, n), K(k0_sub(c.dim, m.dim), n + 1)])))
    for n, m in b.degree_pairs(lambda n, m: m - n >= 2):
        for a, c in b.pairs(merge=False):
            k = s(a, c) * _sign(n - m) * (n - m + 1)
            yield ("distant-degree objects", b.word([U(c, n), U(a, m)]),
                   b.word([U(a, m), U(c, n)], v_power(b.q, k)))


# ---------------------------------------------------------------------------
# derived presentations (Z letters)
# ---------------------------------------------------------------------------

def _stalk_families(b: _Builder, merge, adjacent, far, far_gap) -> Iterator:
    degs = list(b.w.degrees())
    for n in degs:
        for a, c in b.pairs(merge=True):
            yield ("same-degree product", b.word([Z(a, n), Z(c, n)]),
                   b.hall_sum(a, c, merge(a, c), lambda x: [Z(x, n)]))
    for n in degs:
        if n + 1 not in degs:
            continue
        for a, c in b.pairs(merge=False):
            yield ("adjacent-degree objects", b.word([Z(c, n), Z(a, n + 1)]),
                   b.gamma_sum(a, c, lambda m, nn: adjacent(a, c, m, nn, n)))
    for n, m in b.degree_pairs(far_gap):
        for a, c in b.pairs(merge=False):
            yield ("distant-degree objects", b.word([Z(c, n), Z(a, m)]),
                   b.word([Z(a, m), Z(c, n)], v_power(b.q, far(a, m, c, n))))


def _plain_torus_families(b: _Builder) -> Iterator:
    for al in b.grid:
        for be in b.grid:
            yield ("torus product", b.word([K(al), K(be)]), b.word([K(k0_add(al, be))]))
        for n in b.w.degrees():
            for a in b.cls:
                yield ("torus past object", b.word([K(al), Z(a, n)]),
                       b.word([Z(a, n), K(al)], v_power(b.q, b.s(a, al) * _sign(n))))


def _derived_families(b: _Builder) -> Iterator:
    e = b.e
    return _stalk_families(
        b, lambda a, c: 0,
        lambda a, c, m, nn, n: (-2 * e(nn, m), [Z(nn, n + 1), Z(m, n)]),
        lambda a, m, c, n: 2 * e(a, c) * _sign(m - n),
        lambda n, m: m > n + 1)


def _derived_twisted_stalks(b: _Builder) -> Iterator:
    e, s = b.e, b.s
    return _stalk_families(
        b, lambda a, c: e(a, c),
        lambda a, c, m, nn, n: (-e(c, a) - e(nn, m), [Z(nn, n + 1), Z(m, n)]),
        lambda a, m, c, n: s(a, c) * _sign(n - m),
        lambda n, m: m > n + 1)


def _lattice_families(b: _Builder) -> Iterator:
    e, s = b.e, b.s
    yield from _plain_torus_families(b)
    yield from _stalk_families(
        b, lambda a, c: e(a, c),
        lambda a, c, m, nn, n: (
            e(k0_sub(m.dim, nn.dim), k0_sub(m.dim, c.dim)),
            [Z(nn, n + 1), Z(m, n), K(k0_scale(_sign(n + 1), k0_sub(c.dim, m.dim)))]),
        lambda a, m, c, n: s(a, c) * _sign(n - m) * (n - m + 1),
        # read for the right letter in the higher degree; see the catalog notes
        lambda n, m: m - n >= 2)


def _complete_torus_families(b: _Builder) -> Iterator:
    s = b.s
    degs = list(b.w.degrees())
    for n in degs:
        for al in b.grid:
            for a in b.cls:
                yield ("torus past object, same degree", b.word([K(al, n), Z(a, n)]),
                       b.word([Z(a, n), K(al, n)], v_power(b.q, s(al, a) if n in (0, 1) else 0)))
                if n + 1 in degs:
                    yield ("object past next-degree torus", b.word([Z(a, n), K(al, n + 1)]),
                           b.word([K(al, n + 1), Z(a, n)], v_power(b.q, s(al, a) if n in (0, -1) else 0)))
                    yield ("torus past next-degree object", b.word([K(al, n), Z(a, n + 1)]),
                           b.word([Z(a, n + 1), K(al, n)], v_power(b.q, -s(al, a) if n in (0, 1) else 0)))
            for be in b.grid:
                yield ("torus product, same degree", b.word([K(al, n), K(be, n)]),
                       b.word([K(k0_add(al, be), n)]))
                if n + 1 in degs:
                    yield ("torus past next-degree torus", b.word([K(al, n), K(be, n + 1)]),
                           b.word([K(be, n + 1), K(al, n)], v_power(b.q, s(al, be))))
    for n, m in b.degree_pairs(lambda n, m: abs(m - n) > 1):
        for al in b.grid:
            for a in b.cls:
                if n == 0:
                    k = s(al, a) * _sign(m)
                elif n == 1:
                    k = -s(al, a) * _sign(m)
                else:
                    k = 0
                yield ("torus past distant object", b.word([K(al, n), Z(a, m)]),
                       b.word([Z(a, m), K(al, n)], v_power(b.q, k)))
            for be in b.grid:
                yield ("distant torus letters", b.word([K(al, n), K(be, m)]),
                       b.word([K(be, m), K(al, n)]))


def _extended_hall_families(b: _Builder) -> Iterator:
    for a, c in b.pairs(merge=True):
        yield ("object product", b.word([U(a), U(c)]),
               b.hall_sum(a, c, b.e(a, c), lambda x: [U(x)]))
    for al in b.grid:
        for be in b.grid:
            yield ("torus product", b.word([K(al), K(be)]), b.word([K(k0_add(al, be))]))
        for a in b.cls:
            yield ("torus past object", b.word([K(al), U(a)]),
                   b.word([U(a), K(al)], v_power(b.q, b.s(al, a))))


def relation_families(algebra_id: str, cat: QuiverCategory, window: Window,
                      *, stalks_only: bool = False) -> Iterator[tuple[str, Element, Element]]:
    """All defining relations of ``algebra_id`` within ``window``.

    ``stalks_only`` drops every family that involves torus letters (used
    for maps defined on the stalk subalgebra only).
    """
    b = _Builder(cat, window)
    if algebra_id == "MH_plain":
        gen = _modified(b, "U", _plain_twists(b))
    elif algebra_id == "MH_ctw":
        gen = _modified(b, "U", _componentwise_twists(b, "U"))
    elif algebra_id == "N_naive":
        gen = _modified(b, "Y", _componentwise_twists(b, "Y"))
    elif algebra_id == "MH_tw":
        gen = _modified(b, "U", _twisted_twists(b))
    elif algebra_id == "MH_rtw":
        gen = _relative_families(b)
    elif algebra_id == "DH":
        gen = _derived_families(b)
    elif algebra_id == "DH_tw":
        gen = itertools.chain(_plain_torus_families(b), _derived_twisted_stalks(b))
    elif algebra_id == "L_star":
        gen = _lattice_families(b)
    elif algebra_id == "DH_ce_tw":
        gen = itertools.chain(_complete_torus_families(b), _derived_twisted_stalks(b))
    elif algebra_id == "H_tw_e":
        gen = _extended_hall_families(b)
    else:
        raise KeyError(algebra_id)
    for fam, lhs, rhs in gen:
        if stalks_only and any(g.kind in ("K", "k") for w, _ in itertools.chain(lhs, rhs) for g in w):
            continue
        yield fam, lhs, rhs
