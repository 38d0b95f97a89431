"""Walk through the ten algebras on the one-vertex quiver over F_2.

Prints the normal form of the same short product in every algebra that
admits it, then the Hopf-side cross law for two simple objects.
"""

from hallalg import Quiver, QuiverCategory, make_spec, multiply, parse_expression, render
from hallalg.catalog import ALGEBRA_IDS
from hallalg.hopf import HopfStructure

cat = QuiverCategory(Quiver.linear(1), 2, (2,))

PRODUCTS = {
    "U": ("U[S,0]", "U[S,1]"),
    "Y": ("Y[S,0]", "Y[S,1]"),
    "Z": ("Z[S,0]", "Z[S,1]"),
    "ungraded": ("U[S]", "K[(1)]*U[S]"),
}

for cli_id in ALGEBRA_IDS:
    spec = make_spec(cli_id, cat)
    kinds = {k for k, _ in spec.admitted}
    graded = any(g for _, g in spec.admitted)
    key = "ungraded" if not graded else next(k for k in "UYZ" if k in kinds)
    left, right = PRODUCTS[key]
    x, y = parse_expression(left, spec), parse_expression(right, spec)
    print(f"{cli_id:<9} {left} * {right} = {render(multiply(x, y, spec))}")

hs = HopfStructure(make_spec("h-tw-e", cat))
naive = make_spec("naive", cat)
s = cat.by_name("S")
print()
print("coproduct of [S]:", hs.coproduct(hs.element(s)))
print("cross law through the pairing:", render(hs.naive_cross_product(hs.element(s), hs.element(s), 0, naive)))
