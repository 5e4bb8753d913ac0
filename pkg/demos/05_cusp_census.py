"""Counting cusps and components of the compactified modular curve.

The boundary of the compactified moduli of rank-2 Drinfeld modules with
level f consists of |SL_2(A/fA)| / (Q (q-1)) copies of the rank-1
moduli (times the class number, which is 1 for F_q[T]); the curve over
the rank-1 base splits into [(A/fA)^* : F_q^*] components, and the
X_0(f)-quotient's cusps are the double cosets N\\GL_2/H.
"""

from dforge import field_make, PolyRing, census

F3 = field_make(3, 1, 1)
A = PolyRing(F3)
T = A.gen()

print("q = 3")
print("%-8s %6s %6s %6s %6s %8s %5s" %
      ("f", "|GL2|", "|SL2|", "|N|", "cusps", "compnts", "x0"))
for f, name in [(T, "T"), (A.mul(T, T), "T^2"), ((1, 0, 1), "T^2+1"),
                ((1, 1), "T+1"), ((2, 1, 1), "T^2+T+2")]:
    r = census(F3, f)
    print("%-8s %6d %6d %6d %6d %8d %5s" %
          (name, r["gl2_order"], r["sl2_order"], r["n_order"],
           r["cusp_count"], r["component_count"], r["x0_cusp_count"]))
print()

print("q = 2")
F2 = field_make(2, 1, 1)
A2 = PolyRing(F2)
for d in (1, 2):
    for f in A2.monic_polys(d):
        r = census(F2, f)
        print("  f =", A2.repr_elem(f), "->", r["cusp_count"], "cusps,",
              r["component_count"], "components")
print()
print("the identity [GL2:N] = |SL2|/(Q(q-1)) holds in every row "
      "(asserted internally by census)")
