"""Regenerate every published table and census and diff against the golden data.

Run: python demos/07_reproduce.py
"""

from pancake_genus.reproduce import reproduce

report = reproduce()
print("artifacts:", ", ".join(sorted(report.artifacts)))
print("mismatches:", len(report.mismatches))
for d in report.errata:
    print("documented erratum:", d)
