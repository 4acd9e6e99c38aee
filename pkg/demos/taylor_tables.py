"""Small-gain Taylor coefficients of r and psi_L, against closed-form tables.

Fits the shipped numerical code paths over ten small gains and compares each
extracted coefficient (convention: coefficient of g^k/k!) with its reference
value.  The pattern to look for: the k-th order approximation produces the
correct k-th coefficient; order 2 adds nothing to r through g^4 (its
corrections are even and r is odd in g) but fixes the g^2 coefficient of the
angle.

Run:  python3 demos/taylor_tables.py
"""

from pdcsqueeze import taylor_extract

SOLUTIONS = ("exact", "ma1", "ma2", "ma3")

for parameter, max_order in (("r", 4), ("psi_L", 3)):
    for theta in (0.5, 1.0, 2.0):
        reports = {s: taylor_extract(parameter, s, theta, max_order) for s in SOLUTIONS}
        orders = reports["exact"].orders
        print(f"\n=== {parameter} at theta = {theta} (coefficient of g^k/k!) ===")
        print(f"{'k':>2} " + " ".join(f"{s:>11} {'(ref)':>11}" for s in SOLUTIONS))
        for k in orders:
            row = [f"{k:>2}"]
            for s in SOLUTIONS:
                rep = reports[s]
                row.append(f"{rep.estimates[k]:>11.4g} {rep.references[k]:>11.4g}")
            print(" ".join(row))
        worst = max(
            abs(reports[s].estimates[k] - reports[s].references[k])
            for s in SOLUTIONS for k in orders
        )
        print(f"max |estimate - reference| = {worst:.2e}")
