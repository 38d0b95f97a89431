"""Structure constants of the A2 quiver 1 -> 2 over F_3, and a check of the
Hall numbers against direct extension counting."""

import itertools

from hallalg import Quiver, QuiverCategory

cat = QuiverCategory(Quiver.linear(2), 3, (1, 1))
classes = cat.enumerate()

print("classes:")
for c in classes:
    print(f"  {c.name:<6} dim={c.dim}  |Aut|={cat.aut_count(c)}")

print("\nnonzero Hall numbers g^C_{A,B}:")
for a, b, c in itertools.product(classes, repeat=3):
    g = cat.hall_number(a, b, c)
    if g and not (a.is_zero or b.is_zero):
        print(f"  g^{c.name}_({a.name},{b.name}) = {g}   |Ext^1({a.name},{b.name})_{c.name}| = "
              f"{cat.ext_with_middle(a, b, c)}")

agree = all(cat.ext_with_middle(a, b, c) == cat.extension_counts_direct(a, b).get(c, 0)
            for a, b in itertools.product(classes, repeat=2) for c in cat.middle_terms(a, b))
print("\nextension counts agree with cocycle enumeration:", agree)
