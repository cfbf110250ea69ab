#!/usr/bin/env python
# Exact combinatorics behind the overlap law.
#
# The coefficient H(m, n) of theta^n in u^T (A + theta u u^T)^m u counts
# Dyck paths of total length m - n with n horizontal steps allowed only at
# level zero. Three independent routes give the same integers: a slot DP,
# brute-force enumeration of A/theta words, and coefficient extraction from
# W(x, y) = 1/(1 - y - T(x)). Integrating x^m against U_n(x/2) under the
# semicircle gives H(m, n) again, and sum_n H(k, n) theta^n matches the
# k-th moment of p(x; theta) d(mu_sc) computed by quadrature.
from deformed_wigner import combinatorics as comb
from deformed_wigner import laws

print("f_k(x) = U_k(x/2):")
for k in range(7):
    print("  f_%d = %s" % (k, comb.chebyshev_u(k)))

table = comb.path_counts(6, 6)
print("\nI[m][n], Dyck length 2m with n h-steps:")
for m in range(7):
    print("  " + " ".join("%6d" % v for v in table[m]))

print("\nI[4][4] = H(12, 4):", table[4][4], comb.h_coefficient(12, 4), comb.h_coefficient_bruteforce(12, 4))
print("series W coefficient x^4 y^4:", comb.series_w(4, 4)[4][4])
print("integral x^12 f_4 d(mu_sc):", comb.moment_functional_exact(comb.chebyshev_u(4), 12))

print("\nmoments of p(x; 0.6) under the semicircle:")
for k in range(8):
    series = sum(comb.h_coefficient(k, n) * 0.6**n for n in range(k + 1))
    print("  k=%d  quadrature %.12f  series %.12f" % (k, laws.law_moment(k, 0.6), series))

print()
print("\n".join(comb.verify_all(14, 10).lines()))
