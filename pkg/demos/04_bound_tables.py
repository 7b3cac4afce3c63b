"""Closed-form genus bounds, kept exact with fractions.

Run: python demos/04_bound_tables.py
"""

from pancake_genus.bounds import format_table, pn_bounds

for which in (1, 2, 3, 4):
    print(format_table(which, "markdown"))

# The exact value behind a floored cell.
r = pn_bounds(9)
print("P_9 previous upper bound, exact:", r.old_upper, "floor:", r.old_upper_bound)
