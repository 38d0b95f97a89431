"""Algebra maps defined on generators and extended multiplicatively.

Every map here is a :class:`GeneratorMap`: a function from one source letter
to a target :class:`Element`.  Applying it to a word multiplies the letter
images in the target algebra, so homomorphism checks reduce to comparing
normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .catalog import make_spec
from .engine import AlgebraSpec, Element, K, KindError, Letter, U, Y, Z, multiply, normalize
from .quiver import IsoClass, QuiverCategory, k0_neg, k0_scale, k0_sub
from .scalars import TwistScalar, v_power


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass
class GeneratorMap:
    name: str
    source: AlgebraSpec
    target: AlgebraSpec
    image: Callable[[Letter], Element]
    _memo: dict = field(default_factory=dict, repr=False)

    def letter(self, x: Letter) -> Element:
        if x not in self._memo:
            self.source.check_letter(x)
            self._memo[x] = normalize(self.image(x), self.target)
        return self._memo[x]

    def word(self, word: Iterable[Letter]) -> Element:
        out = Element.unit(self.target.q)
        for x in word:
            out = multiply(out, self.letter(x), self.target)
        return out

    def __call__(self, x: Element) -> Element:
        out = Element(self.target.q)
        for w, c in x:
            out = out + self.word(w).scale(c)
        return out


def _word(spec: AlgebraSpec, letters, coeff=1) -> Element:
    return Element.word(spec.q, letters, coeff)


# -- Theta: componentwise twisted -> naive lattice ------------------------------------

def theta_map(src: AlgebraSpec, tgt: AlgebraSpec) -> GeneratorMap:
    def image(x: Letter) -> Element:
        if x.kind == "U":
            return _word(tgt, [Y(x.payload, x.degree)])
        return _word(tgt, [x])
    return GeneratorMap("theta", src, tgt, image)


def theta_inverse_map(src: AlgebraSpec, tgt: AlgebraSpec) -> GeneratorMap:
    def image(x: Letter) -> Element:
        if x.kind == "Y":
            return _word(tgt, [U(x.payload, x.degree)])
        return _word(tgt, [x])
    return GeneratorMap("theta_inverse", src, tgt, image)


# -- phi: relative twisted -> Drinfeld dual lattice -------------------------------------

def phi_map(src: AlgebraSpec, tgt: AlgebraSpec) -> GeneratorMap:
    def image(x: Letter) -> Element:
        if x.kind == "U":
            return _word(tgt, [Z(x.payload, x.degree)])
        return _word(tgt, [K(k0_scale(_sign(x.degree), x.payload))])
    return GeneratorMap("phi", src, tgt, image)


def kernel_generator(spec: AlgebraSpec, alpha, beta, n: int) -> Element:
    """``K_{alpha,n+1} K_{beta,n} - K_{alpha-beta,n+1}``, normalized."""
    x = _word(spec, [K(alpha, n + 1), K(beta, n)]) - _word(spec, [K(k0_sub(alpha, beta), n + 1)])
    return normalize(x, spec)


@dataclass
class KernelCertificate:
    """x = sum coeff * left * g(alpha, beta, n) * right over ``steps``."""

    steps: list  # (coeff, left word, (alpha, beta, n), right word)
    remainder: Element

    def rebuild(self, spec: AlgebraSpec) -> Element:
        out = Element(spec.q)
        for coeff, left, (a, b, n), right in self.steps:
            g = kernel_generator(spec, a, b, n)
            term = multiply(multiply(_word(spec, left), g, spec), _word(spec, right), spec)
            out = out + term.scale(coeff)
        return out


def _torus_chain(spec: AlgebraSpec, ks: tuple) -> tuple[list, tuple]:
    """Rewrite a normal torus word to ``K_{sigma,0}`` modulo the kernel ideal.

    Returns (steps, sigma) where each step is (coeff, left, gen, []) and
    ``word(ks) - K_{sigma,0} = sum coeff * left * gen``.
    """
    steps = []
    cur = ks
    zero = (0,) * spec.cat.quiver.n
    while True:
        if not cur:
            return steps, zero
        if len(cur) == 1 and cur[0].degree == 0:
            return steps, cur[0].payload
        last = cur[-1]
        head = cur[:-1]
        b, d = last.payload, last.degree
        if head and head[-1].degree == d + 1:
            # K_{a,d+1} K_{b,d} = g(a, b, d) + K_{a-b,d+1}
            a = head[-1].payload
            steps.append((1, head[:-1], (a, b, d)))
            nxt = head[:-1] + (K(k0_sub(a, b), d + 1),)
        elif head or d < 0:
            # K_{b,d} = g(0, b, d) + K_{-b,d+1}
            steps.append((1, head, (zero, b, d)))
            nxt = head + (K(k0_neg(b), d + 1),)
        else:
            # single letter above degree 0: K_{b,d} = -g(0, -b, d-1) + K_{-b,d-1}
            steps.append((-1, head, (zero, k0_neg(b), d - 1)))
            nxt = (K(k0_neg(b), d - 1),)
        cur = tuple(x for x in nxt if not x.is_unit)


def kernel_reduce(spec: AlgebraSpec, x: Element) -> KernelCertificate:
    """Express ``x`` (an element of the relative twisted algebra) as a
    combination of two-sided multiples of kernel generators plus a remainder
    built from words ``K_{sigma,0} U...``; the remainder is zero exactly when
    ``x`` lies in the kernel of phi."""
    x = normalize(x, spec)
    steps = []
    remainder = Element(spec.q)
    for w, c in x:
        ks = tuple(g for g in w if g.kind == "K")
        us = tuple(g for g in w if g.kind != "K")
        chain, sigma = _torus_chain(spec, ks)
        for coeff, left, gen in chain:
            steps.append((c * coeff, left, gen, us))
        remainder = remainder + _word(spec, (K(sigma, 0),) + us, c)
    return KernelCertificate(steps, normalize(remainder, spec))


# -- iota, iota-tilde, eta, T ---------------------------------------------------------------

def _iota_stalk(tgt: AlgebraSpec, a: IsoClass, n: int) -> Element:
    cat = tgt.cat
    e = cat.euler_exponent(a, a)
    if n == 0:
        return _word(tgt, [U(a, 0)])
    if n > 0:
        ks = [K(k0_scale(_sign(n - j + 1), a.dim), j) for j in range(n, 0, -1)]
        return _word(tgt, [U(a, n)] + ks, v_power(tgt.q, -n * e))
    m = -n
    ks = [K(k0_scale(_sign(k), a.dim), -m + k) for k in range(1, m + 1)]
    return _word(tgt, [U(a, -m)] + ks, v_power(tgt.q, m * e))


def iota_map(src: AlgebraSpec, tgt: AlgebraSpec) -> GeneratorMap:
    """Twisted derived Hall algebra (stalk letters only) -> componentwise twisted."""
    def image(x: Letter) -> Element:
        if x.kind != "Z":
            raise KindError(f"iota is defined on stalk letters only, got {x!r}")
        return _iota_stalk(tgt, x.payload, x.degree)
    return GeneratorMap("iota", src, tgt, image)


def iota_tilde_map(src: AlgebraSpec, tgt: AlgebraSpec) -> GeneratorMap:
    """Completely extended derived Hall algebra -> componentwise twisted."""
    def image(x: Letter) -> Element:
        if x.kind == "K":
            return _word(tgt, [x])
        return _iota_stalk(tgt, x.payload, x.degree)
    return GeneratorMap("iota_tilde", src, tgt, image)


def eta_map(src: AlgebraSpec, tgt: AlgebraSpec) -> GeneratorMap:
    """Componentwise twisted -> completely extended derived Hall algebra."""
    def image(x: Letter) -> Element:
        if x.kind == "K":
            return _word(tgt, [x])
        a, n = x.payload, x.degree
        e = tgt.cat.euler_exponent(a, a)
        if n == 0:
            return _word(tgt, [Z(a, 0)])
        if n > 0:
            ks = [K(k0_scale(_sign(n - j), a.dim), j) for j in range(1, n + 1)]
            return _word(tgt, [Z(a, n)] + ks, v_power(tgt.q, n * e))
        m = -n
        ks = [K(k0_scale(_sign(m + 1 - j), a.dim), -j) for j in range(0, m)]
        return _word(tgt, [Z(a, -m)] + ks, v_power(tgt.q, -m * e))
    return GeneratorMap("eta", src, tgt, image)


def embed_map(src: AlgebraSpec, tgt: AlgebraSpec) -> GeneratorMap:
    """Inclusion of stalk letters into the completely extended algebra."""
    def image(x: Letter) -> Element:
        if x.kind != "Z":
            raise KindError(f"only stalk letters embed, got {x!r}")
        return _word(tgt, [x])
    return GeneratorMap("embed", src, tgt, image)


def shift_map(spec: AlgebraSpec, k: int) -> GeneratorMap:
    def image(x: Letter) -> Element:
        if x.kind != "Z":
            raise KindError(f"the shift acts on stalk letters only, got {x!r}")
        return _word(spec, [Z(x.payload, x.degree + k)])
    return GeneratorMap(f"T^{k}", spec, spec, image)


def shift_T(x: Element, spec: AlgebraSpec, k: int = 1) -> Element:
    """Shift every stalk letter of ``x`` by ``k`` degrees; coefficients unchanged."""
    out = Element(spec.q)
    for w, c in x:
        for g in w:
            if g.kind != "Z":
                raise KindError(f"the shift acts on stalk letters only, got {g!r}")
        out = out + _word(spec, [Z(g.payload, g.degree + k) for g in w], c)
    return out


def shift_degrees(x: Element, k: int) -> Element:
    """Raise the degree of every graded letter by ``k`` (no normalization)."""
    out = Element(x.q)
    for w, c in x:
        out = out + Element.word(x.q, [Letter(g.kind, g.payload, g.degree + k) for g in w], c)
    return out


# -- normal form of objects of the derived category ----------------------------------------

def _stalk_list(cat: QuiverCategory, stalks) -> list[tuple[IsoClass, int]]:
    merged: dict[int, IsoClass] = {}
    for cls, n in stalks:
        merged[n] = cat.direct_sum(merged[n], cls) if n in merged else cls
    return sorted(((c, n) for n, c in merged.items() if not c.is_zero), key=lambda t: t[1])


def normal_form_exponent(cat: QuiverCategory, stalks) -> int:
    """v-exponent of the coefficient in Z(A) = coeff * Z^{[r]} ... Z^{[l]}."""
    items = _stalk_list(cat, stalks)
    out = 0
    for i, (ai, di) in enumerate(items):
        for aj, dj in items[i + 1:]:
            out += cat.euler_exponent(aj, ai) * _sign(dj - di)
    return out


def normal_form_Z(cat: QuiverCategory, stalks, spec: AlgebraSpec) -> Element:
    items = _stalk_list(cat, stalks)
    word = [Z(c, n) for c, n in reversed(items)]
    return _word(spec, word, v_power(cat.q, normal_form_exponent(cat, items)))


def derived_hom_exponent(cat: QuiverCategory, x: tuple[IsoClass, int], y: tuple[IsoClass, int], shift: int) -> int:
    """dim Hom_D(X, Y[shift]) for stalk complexes X = A[-n], Y = B[-m]."""
    (a, n), (b, m) = x, y
    k = n - m + shift
    if k == 0:
        return cat.hom_dim(a, b)
    if k == 1:
        return cat.ext1_dim(a, b)
    return 0


def object_class_oracle(cat: QuiverCategory, stalks, spec: AlgebraSpec, memo: dict | None = None) -> Element:
    """[A] for A = sum of stalks, from derived-category Hom counts.

    Splits off the top stalk X: there are no extensions of X by the rest Y,
    so [X][Y] = [X + Y] / prod_i |Hom(X[i], Y)|^{(-1)^i} in the untwisted
    algebra, and the twisted product rescales by the square root of
    prod_i |Hom(X, Y[i])|^{(-1)^i}.  Both counts come from hom and ext
    dimensions of the backend, not from the Euler form.
    """
    items = _stalk_list(cat, stalks)
    if not items:
        return Element.unit(spec.q)
    memo = {} if memo is None else memo
    key = tuple((c.key, n) for c, n in items)
    if key in memo:
        return memo[key]
    top, rest = items[-1], items[:-1]
    acc = object_class_oracle(cat, rest, spec, memo)
    untwisted = 0  # exponent of q in prod_i |Hom(X[i], Y)|^{(-1)^i}
    twist = 0      # exponent of q in prod_i |Hom(X, Y[i])|^{(-1)^i}
    span = top[1] - (rest[0][1] if rest else top[1]) + 2
    for y in rest:
        for i in range(0, span + 1):
            untwisted += _sign(i) * derived_hom_exponent(cat, top, y, -i)
        for i in range(-span, span + 1):
            twist += _sign(i) * derived_hom_exponent(cat, top, y, i)
    # [X + Y] = q^untwisted [X][Y] = q^untwisted v^{-twist} [X] * [Y]
    factor = v_power(cat.q, 2 * untwisted - twist)
    out = multiply(_word(spec, [Z(top[0], top[1])]), acc, spec).scale(factor)
    memo[key] = out
    return out


# -- homomorphism verification --------------------------------------------------------------

def verify_homomorphism(gmap: GeneratorMap, relations) -> dict:
    """Check every relation instance (family, lhs, rhs) of the source.

    Returns {family: {"instances": n, "failures": [...]}}.
    """
    from .expr import render
    out: dict = {}
    for fam, lhs, rhs in relations:
        rec = out.setdefault(fam, {"instances": 0, "failures": []})
        rec["instances"] += 1
        left, right = gmap(lhs), gmap(rhs)
        if not (left - right).is_zero():
            rec["failures"].append({"lhs": render(lhs), "rhs": render(rhs),
                                    "image_lhs": render(left), "image_rhs": render(right)})
    return out
