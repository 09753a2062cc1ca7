"""Closed-form comparisons against MBR and MSR operating points.

Three series, all exact arithmetic:
  fig5  plain file size vs k          (twin = k^2 ties MSR, beats MBR)
  fig8  secure size vs l1 at k=50     (twin k(k-l) vs MBR (k-l)(k+1-l)/2)
  fig9  secure size vs l2 at k=50     (twin vs MSR's (1-1/k)^l2 decay)
"""

from fractions import Fraction

import twinstore as ts

params = ts.BoundParams(k=4, d=4, alpha=4, beta=1)
print("storage capacity bound, k=d=alpha=4, beta=1:",
      ts.capacity_bound(params))
print("secure bound with l=1 eavesdropper:",
      ts.secrecy_bound_pawar(params, 1))
print("MSR point for S=16, k=4, d=7:", ts.msr_point(16, 4, 7))
print("MBR point for S=10, k=4, d=4:", ts.mbr_point(10, 4, 4))

for kind, kwargs in [("fig5", {"k_max": 50}),
                     ("fig8", {"k": 50}),
                     ("fig9", {"k": 50, "l1": 2})]:
    rows = ts.comparison_series(kind, **kwargs)
    print(f"\nseries {kind}: {len(rows)} rows")
    for row in (rows[0], rows[len(rows) // 2], rows[-1]):
        print(f"  k={row.k} l1={row.l1} l2={row.l2}  "
              f"twin={row.s_twin}  mbr={row.s_mbr}  msr={row.s_msr}")

# the fig9 tail stays an exact rational until serialization
tail = ts.comparison_series("fig9", k=50, l1=2)[-1]
assert tail.s_msr == 50 * Fraction(49, 50) ** 47
print(f"\nfig9 tail MSR value, exact: {tail.s_msr.numerator} / "
      f"{tail.s_msr.denominator}")
print(f"fig9 tail MSR value, displayed: {float(tail.s_msr):.6f}")

print("\nCSV emission (first three lines of fig5):")
print("\n".join(ts.series_to_csv(ts.comparison_series("fig5", k_max=50))
                .splitlines()[:3]))
