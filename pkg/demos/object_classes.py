"""Classes of objects of the derived category as ordered products of stalks.

For a few stalk configurations on A2 over F_2 the class built from Hom and
Ext counts is compared with the closed-form normal form, and the embedding
into the componentwise twisted modified algebra is shown.
"""

from hallalg import Quiver, QuiverCategory, make_spec, render
from hallalg.morphisms import iota_map, normal_form_Z, object_class_oracle

cat = QuiverCategory(Quiver.linear(2), 2, (1, 1))
dtw, ctw = make_spec("dh-tw", cat), make_spec("mh-ctw", cat)
iota = iota_map(dtw, ctw)
s1, s2, p = (cat.by_name(n) for n in ("S1", "S2", "M1_1"))

for stalks in ([(s1, 0), (s2, 1)], [(s2, 0), (s1, 1)], [(p, -1), (s1, 0), (s2, 2)]):
    label = " + ".join(f"{c.name}[{-d}]" for c, d in stalks)
    oracle = object_class_oracle(cat, stalks, dtw)
    closed = normal_form_Z(cat, stalks, dtw)
    print(f"{label}:  {render(closed)}   matches counts: {oracle == closed}")
    print(f"    in the modified algebra: {render(iota(closed))}")
