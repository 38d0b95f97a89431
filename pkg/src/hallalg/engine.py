"""Straightening engine for algebras given by graded generators and rewrite rules.

A word is a tuple of :class:`Letter`.  Each algebra assigns every letter a
*slot*; a word is in normal form when slots strictly increase left to right.
Whenever two neighbours ``x, y`` have ``slot(x) >= slot(y)`` the algebra's
``reduce_pair`` rewrites them (a merge when the slots tie, a commutation or
sum-producing swap otherwise).

Normal forms are built by pushing letters one at a time onto an already
normal prefix, so only the junction pair is ever reducible.  Every rewrite is
checked against a well-founded measure and memoized per algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .quiver import CapacityError, IsoClass
from .scalars import TwistScalar

OBJECT_KINDS = frozenset({"U", "Z", "Y"})
TORUS_KINDS = frozenset({"K", "k"})


class KindError(ValueError):
    """A letter kind the algebra does not admit."""


class TerminationError(AssertionError):
    """A rewrite rule failed to decrease the termination measure."""


@dataclass(frozen=True)
class Letter:
    """One generator: ``kind`` is U, Y or Z (object class payload), K (graded
    torus letter) or k (ungraded torus letter); ``degree`` is None when the
    kind is ungraded in the algebra."""

    kind: str
    payload: object
    degree: int | None = None

    @property
    def is_unit(self) -> bool:
        if self.kind in OBJECT_KINDS:
            return self.payload.is_zero
        return not any(self.payload)

    @property
    def k0(self) -> tuple:
        return self.payload.dim if self.kind in OBJECT_KINDS else self.payload

    @property
    def sort_key(self):
        pk = self.payload.sort_key if self.kind in OBJECT_KINDS else (0, self.payload)
        return (self.kind, self.degree if self.degree is not None else 0, pk)

    def __repr__(self):
        from .expr import render_letter
        return render_letter(self)


def U(cls: IsoClass, n: int | None = None) -> Letter:
    return Letter("U", cls, n)


def Y(cls: IsoClass, n: int) -> Letter:
    return Letter("Y", cls, n)


def Z(cls: IsoClass, n: int) -> Letter:
    return Letter("Z", cls, n)


def K(alpha, n: int | None = None) -> Letter:
    return Letter("K" if n is not None else "k", tuple(alpha), n)


Word = tuple


def clean(word: Iterable[Letter]) -> Word:
    return tuple(x for x in word if not x.is_unit)


class Element:
    """Finite linear combination of words with coefficients in Q(v)."""

    __slots__ = ("q", "terms")

    def __init__(self, q: int, terms: dict | None = None):
        self.q = q
        self.terms: dict = {}
        if terms:
            for w, c in terms.items():
                self._add(clean(w), c)

    def _add(self, word: Word, coeff) -> None:
        if not isinstance(coeff, TwistScalar):
            coeff = TwistScalar(self.q, coeff)
        c = self.terms.get(word)
        c = coeff if c is None else c + coeff
        if c.is_zero():
            self.terms.pop(word, None)
        else:
            self.terms[word] = c

    @classmethod
    def word(cls, q: int, letters: Iterable[Letter], coeff=1) -> "Element":
        return cls(q, {tuple(letters): coeff})

    @classmethod
    def unit(cls, q: int) -> "Element":
        return cls(q, {(): 1})

    @classmethod
    def zero(cls, q: int) -> "Element":
        return cls(q)

    def copy(self) -> "Element":
        out = Element(self.q)
        out.terms = dict(self.terms)
        return out

    def __iter__(self) -> Iterator[tuple[Word, TwistScalar]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Element") -> "Element":
        out = self.copy()
        for w, c in other.terms.items():
            out._add(w, c)
        return out

    def __neg__(self) -> "Element":
        out = Element(self.q)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        out = Element(self.q)
        for w, d in self.terms.items():
            out._add(w, d * c)
        return out

    def concat(self, other: "Element") -> "Element":
        """Free (unnormalized) product: concatenate words bilinearly."""
        out = Element(self.q)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out._add(w1 + w2, c1 * c2)
        return out

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, word: Iterable[Letter]) -> TwistScalar:
        return self.terms.get(tuple(word), TwistScalar(self.q))

    def sorted_terms(self) -> list[tuple[Word, TwistScalar]]:
        return sorted(self.terms.items(), key=lambda t: (-len(t[0]), [x.sort_key for x in t[0]]))

    def __repr__(self):
        from .expr import render
        return render(self)


class AlgebraSpec:
    """Rule table for one algebra.  Subclasses fill in ``slot`` and
    ``reduce_pair``; the engine does everything else."""

    algebra_id = "abstract"
    admitted: frozenset = frozenset()  # {(kind, graded)}

    def __init__(self, cat, *, term_ceiling: int = 200_000, check_measure: bool = True):
        self.cat = cat
        self.q = cat.q
        self.term_ceiling = term_ceiling
        self.check_measure = check_measure
        self._push_memo: dict = {}

    # -- to be provided by subclasses --------------------------------------
    def slot(self, x: Letter) -> tuple:
        raise NotImplementedError

    def reduce_pair(self, x: Letter, y: Letter) -> list[tuple[TwistScalar, Word]]:
        raise NotImplementedError

    # -- helpers -------------------------------------------------------------
    def check_letter(self, x: Letter) -> None:
        if (x.kind, x.degree is not None) not in self.admitted:
            graded = "graded" if x.degree is not None else "ungraded"
            raise KindError(f"{self.algebra_id} does not admit {graded} {x.kind} letters ({x!r})")

    def is_basis_word(self, word: Word) -> bool:
        slots = [self.slot(x) for x in word]
        return all(a < b for a, b in zip(slots, slots[1:])) and not any(x.is_unit for x in word)

    def measure(self, word: Word) -> tuple:
        slots = [self.slot(x) for x in word]
        torus = [x.kind in TORUS_KINDS for x in word]
        inv_obj = inv_torus = 0
        for i in range(len(word)):
            for j in range(i + 1, len(word)):
                if slots[i] >= slots[j]:
                    if torus[i] or torus[j]:
                        inv_torus += 1
                    else:
                        inv_obj += 1
        return (inv_obj, inv_torus, len(word))

    def scalar(self, x) -> TwistScalar:
        if isinstance(x, TwistScalar):
            return x
        return TwistScalar(self.q, Fraction(x))

    # -- normalization ---------------------------------------------------------
    def _push(self, prefix: Word, x: Letter) -> dict:
        """Normal form of ``prefix + (x,)`` for a normal ``prefix``."""
        key = (prefix, x)
        memo = self._push_memo.get(key)
        if memo is not None:
            return memo
        if not prefix or self.slot(prefix[-1]) < self.slot(x):
            out = {prefix + (x,): TwistScalar(self.q, 1)}
        else:
            last = prefix[-1]
            head = prefix[:-1]
            before = self.measure((last, x)) if self.check_measure else None
            out = {}
            for coeff, mid in self.reduce_pair(last, x):
                mid = clean(mid)
                if self.check_measure and not self.measure(mid) < before:
                    raise TerminationError(f"{self.algebra_id}: {last!r}*{x!r} -> {mid!r} does not decrease")
                acc = self._append(head, mid)
                for w, c in acc.items():
                    _accumulate(out, w, c * coeff)
            if len(out) > self.term_ceiling:
                raise CapacityError(f"{len(out)} terms exceed the term ceiling {self.term_ceiling}")
        self._push_memo[key] = out
        return out

    def _append(self, prefix: Word, letters: Word) -> dict:
        acc = {prefix: TwistScalar(self.q, 1)}
        for y in letters:
            nxt: dict = {}
            for w, c in acc.items():
                for w2, c2 in self._push(w, y).items():
                    _accumulate(nxt, w2, c * c2)
            acc = nxt
            if len(acc) > self.term_ceiling:
                raise CapacityError(f"{len(acc)} terms exceed the term ceiling {self.term_ceiling}")
        return acc

    def normalize_word(self, word: Iterable[Letter]) -> dict:
        word = tuple(word)
        for x in word:
            self.check_letter(x)
        return self._append((), clean(word))


def _accumulate(d: dict, w, c) -> None:
    prev = d.get(w)
    c = c if prev is None else prev + c
    if c.is_zero():
        d.pop(w, None)
    else:
        d[w] = c


def normalize(x: Element, spec: AlgebraSpec) -> Element:
    out: dict = {}
    for w, c in x.terms.items():
        for w2, c2 in spec.normalize_word(w).items():
            _accumulate(out, w2, c * c2)
        if len(out) > spec.term_ceiling:
            raise CapacityError(f"{len(out)} terms exceed the term ceiling {spec.term_ceiling}")
    res = Element(x.q)
    res.terms = out
    return res


def multiply(x: Element, y: Element, spec: AlgebraSpec) -> Element:
    return normalize(x.concat(y), spec)


def product(factors: Iterable[Element], spec: AlgebraSpec) -> Element:
    out = Element.unit(spec.q)
    for f in factors:
        out = multiply(out, f, spec)
    return out


def equal(x: Element, y: Element, spec: AlgebraSpec) -> bool:
    return normalize(x - y, spec).is_zero()


def letter_element(spec: AlgebraSpec, *letters: Letter, coeff=1) -> Element:
    return Element.word(spec.q, letters, coeff)
