"""Optimal Z = 2 code sets for every even length up to 40, with m = 1.

Run: python demos/02_all_even_lengths.py
"""
from zccs import check_optimality, check_zccs, generate_zccs, parse_gbf_expr, plan_parameters

g = parse_gbf_expr("y0", q=2, m=1)
print(" L  primes      M  K  sigma  check  optimality")
for L in range(2, 41, 2):
    plan = plan_parameters(L, m=1)
    S = generate_zccs(plan.build(2, g, n=0, delete=(), gamma=0))
    ok = check_zccs(S, 2).passed
    opt = check_optimality(len(S), S.params.K, L, 2).value
    primes = "*".join(map(str, plan.primes)) or "-"
    print(f"{L:2d}  {primes:<10} {len(S):2d}  {S.params.K}  {S.sigma:5d}  {'ok' if ok else 'FAIL':5}  {opt}")
