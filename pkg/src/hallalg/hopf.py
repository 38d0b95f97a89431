"""Coalgebra structure on the extended twisted Hall algebra.

Basis words are ``[B] k_alpha`` (an ungraded U letter followed by an
ungraded torus letter, either possibly absent).  Tensors of any arity are
dictionaries from tuples of basis words to scalars.  The coproduct is exact
on finite support: every term of ``Delta([A] k_alpha)`` has object classes of
dimension at most that of A, so nothing is truncated.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .catalog import ExtendedTwistedHall
from .engine import AlgebraSpec, Element, K, Letter, U, Y, _accumulate, clean, normalize
from .quiver import IsoClass, k0_add, k0_sub
from .scalars import TwistScalar, v_power


class Tensor:
    """Finite sum of pure tensors ``w_1 (x) ... (x) w_r`` of basis words."""

    __slots__ = ("q", "arity", "terms")

    def __init__(self, q: int, arity: int, terms: dict | None = None):
        self.q = q
        self.arity = arity
        self.terms: dict = {}
        for k, c in (terms or {}).items():
            self.add(k, c)

    def add(self, key: tuple, coeff) -> None:
        if not isinstance(coeff, TwistScalar):
            coeff = TwistScalar(self.q, coeff)
        _accumulate(self.terms, tuple(clean(w) for w in key), coeff)

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.arity == other.arity and self.terms == other.terms

    def __repr__(self):
        from .expr import render_word
        parts = [f"{c}·" + " ⊗ ".join(render_word(w) or "1" for w in k) for k, c in sorted(
            self.terms.items(), key=lambda t: repr(t[0]))]
        return " + ".join(parts) or "0"

    def is_zero(self) -> bool:
        return not self.terms


def split_basis_word(word) -> tuple[IsoClass | None, tuple | None]:
    """(object class or None, torus class or None) of a basis word [B] k_alpha."""
    obj = alpha = None
    for x in word:
        if x.kind == "U":
            obj = x.payload
        elif x.kind == "k":
            alpha = x.payload
    return obj, alpha


class HopfStructure:
    """Coproduct, counit and Hopf pairing of the extended twisted Hall algebra."""

    def __init__(self, spec: ExtendedTwistedHall):
        self.spec = spec
        self.cat = spec.cat
        self.q = spec.q
        self._delta: dict = {}

    def zero_k0(self) -> tuple:
        return (0,) * self.cat.quiver.n

    def basis_word(self, b: IsoClass | None, alpha: tuple | None) -> tuple:
        out = []
        if b is not None:
            out.append(U(b))
        if alpha is not None:
            out.append(K(alpha))
        return clean(out)

    def element(self, b: IsoClass | None = None, alpha: tuple | None = None, coeff=1) -> Element:
        return Element.word(self.q, self.basis_word(b, alpha), coeff)

    # -- coproduct ---------------------------------------------------------------
    def delta_word(self, word) -> dict:
        word = tuple(word)
        if word in self._delta:
            return self._delta[word]
        a, alpha = split_basis_word(word)
        a = a if a is not None else self.cat.zero
        alpha = alpha if alpha is not None else self.zero_k0()
        out: dict = {}
        ranges = [range(x + 1) for x in a.dim]
        for bdim in itertools.product(*ranges):
            cdim = k0_sub(a.dim, bdim)
            for b in self.cat.classes_of_dim(bdim):
                for c in self.cat.classes_of_dim(cdim):
                    ext = self.cat.ext_with_middle(b, c, a)
                    if not ext:
                        continue
                    coef = Fraction(ext * self.cat.aut_count(a),
                                    self.q ** self.cat.hom_dim(b, c) * self.cat.aut_count(b) * self.cat.aut_count(c))
                    scal = v_power(self.q, self.cat.euler_exponent(b, c)) * coef
                    left = self.basis_word(b, k0_add(cdim, alpha))
                    right = self.basis_word(c, alpha)
                    _accumulate(out, (left, right), scal)
        self._delta[word] = out
        return out

    def coproduct(self, h: Element) -> Tensor:
        h = normalize(h, self.spec)
        out = Tensor(self.q, 2)
        for w, c in h:
            for key, d in self.delta_word(w).items():
                out.add(key, c * d)
        return out

    def counit_word(self, word) -> int:
        a, _ = split_basis_word(word)
        return 1 if a is None or a.is_zero else 0

    def counit(self, h: Element) -> TwistScalar:
        h = normalize(h, self.spec)
        out = TwistScalar(self.q)
        for w, c in h:
            out = out + c * self.counit_word(w)
        return out

    # -- tensor operations ------------------------------------------------------------
    def apply_at(self, t: Tensor, pos: int, fn) -> Tensor:
        """Apply ``fn`` (word -> dict of word-tuples or scalar) to factor ``pos``."""
        probe = None
        out_terms: dict = {}
        arity = None
        for key, c in t.terms.items():
            res = fn(key[pos])
            if isinstance(res, dict):
                for sub, d in res.items():
                    nk = key[:pos] + sub + key[pos + 1:]
                    arity = len(nk)
                    _accumulate(out_terms, nk, c * d)
            else:
                nk = key[:pos] + key[pos + 1:]
                arity = len(nk)
                if res:
                    _accumulate(out_terms, nk, c * res)
        out = Tensor(self.q, arity if arity is not None else t.arity)
        out.terms = out_terms
        return out

    def tensor_of(self, x: Element) -> Tensor:
        x = normalize(x, self.spec)
        return Tensor(self.q, 1, {(w,): c for w, c in x})

    def multiply_tensors(self, s: Tensor, t: Tensor) -> Tensor:
        out = Tensor(self.q, s.arity)
        for k1, c1 in s.terms.items():
            for k2, c2 in t.terms.items():
                factors = [self.spec.normalize_word(a + b) for a, b in zip(k1, k2)]
                for combo in itertools.product(*(f.items() for f in factors)):
                    coeff = c1 * c2
                    for _, d in combo:
                        coeff = coeff * d
                    out.add(tuple(w for w, _ in combo), coeff)
        return out

    # -- pairing -------------------------------------------------------------------
    def pairing_words(self, x, y) -> TwistScalar:
        m, alpha = split_basis_word(x)
        n, beta = split_basis_word(y)
        m = m if m is not None else self.cat.zero
        n = n if n is not None else self.cat.zero
        if m != n:
            return TwistScalar(self.q)
        alpha = alpha if alpha is not None else self.zero_k0()
        beta = beta if beta is not None else self.zero_k0()
        s = self.cat.symmetrized_exponent(alpha, beta)
        return v_power(self.q, s) * self.cat.aut_count(m)

    def pairing(self, x: Element, y: Element) -> TwistScalar:
        x, y = normalize(x, self.spec), normalize(y, self.spec)
        out = TwistScalar(self.q)
        for w1, c1 in x:
            for w2, c2 in y:
                out = out + c1 * c2 * self.pairing_words(w1, w2)
        return out

    def pairing2(self, s: Tensor, t: Tensor) -> TwistScalar:
        out = TwistScalar(self.q)
        for k1, c1 in s.terms.items():
            for k2, c2 in t.terms.items():
                p = c1 * c2
                for a, b in zip(k1, k2):
                    p = p * self.pairing_words(a, b)
                    if p.is_zero():
                        break
                out = out + p
        return out

    # -- cross law of the naive lattice algebra --------------------------------------
    def to_graded(self, word, degree: int, obj_kind: str = "Y") -> tuple:
        out = []
        for x in word:
            if x.kind == "U":
                out.append(Letter(obj_kind, x.payload, degree))
            elif x.kind == "k":
                out.append(K(x.payload, degree))
        return tuple(out)

    def naive_cross_product(self, lower: Element, upper: Element, n: int, naive: AlgebraSpec) -> Element:
        """``lower`` placed in slot n times ``upper`` placed in slot n + 1, evaluated
        through the coproducts and the pairing, as an element of ``naive``."""
        du = self.coproduct(upper)
        dl = self.coproduct(lower)
        out = Element(self.q)
        for (u1, u2), cu in du.terms.items():
            for (l1, l2), cl in dl.terms.items():
                p = self.pairing_words(u2, l1)
                if p.is_zero():
                    continue
                word = self.to_graded(u1, n + 1) + self.to_graded(l2, n)
                out = out + Element.word(self.q, word, cu * cl * p)
        return normalize(out, naive)

    def place(self, x: Element, n: int, naive: AlgebraSpec) -> Element:
        """An element of the extended twisted Hall algebra placed in slot n."""
        out = Element(self.q)
        for w, c in normalize(x, self.spec):
            out = out + Element.word(self.q, self.to_graded(w, n), c)
        return normalize(out, naive)
