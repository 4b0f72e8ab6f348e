"""Column PMEPR of generated sets, and what goes wrong when h has no path.

Run: python demos/03_column_pmepr.py
"""
import numpy as np

from zccs import (ConstructionParams, HFunction, check_pmepr_bound, check_zccs,
                  generate_zccs, parse_gbf_expr)
from zccs.pmepr import golay_scan

g = parse_gbf_expr("2*y1*y2 + y0*y1 + 3*y0", q=4, m=3)

# %% h is a q/2-weighted path in (v0, v1): every column is a Golay sequence
h_path = HFunction.from_path(4, perm=(0, 1), lin=(2, 0), const=1)
S = generate_zccs(ConstructionParams(4, g, 1, (0,), 2, (3,), h=h_path))
rep = check_pmepr_bound(S)
print(f"path h {h_path.table}: worst column PMEPR {rep.worst:.6f}")
print(f"  columns with a Golay partner in the set: {golay_scan(S).mean():.0%}")

# %% h = 2 v0 + 2 v1 still meets the {c, c+q/2} rule, so the set is valid ...
h_flat = HFunction(4, (0, 2, 2, 0))
T = generate_zccs(ConstructionParams(4, g, 1, (0,), 2, (3,), h=h_flat))
print(f"linear h {h_flat.table}: ZCCS check {check_zccs(T, 8).passed}")
# ... but its columns are not Golay and reach PMEPR K = 4
rep = check_pmepr_bound(T)
print(f"  worst column PMEPR {rep.worst:.6f}; per-code max {np.round(rep.per_code_max[:4], 3)}")
