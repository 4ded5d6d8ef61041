"""
Scanning the two conjecture families
====================================

Both scans are small enough for a laptop.  The interesting column is how
often the closed-form fast path settles an instance without expanding it.
"""

from collections import Counter

from cgfpos.conjectures import ScanSummary, scan_family

for family, ranges in [("gk", dict(n_max=30)), ("stanton", dict(n_max=3, m_max=20, a_max=2))]:
    summary = ScanSummary()
    kinds = Counter()
    for rec in scan_family(family, **ranges):
        summary.add(rec)
        kinds.update(rec.certificates)
    print(family, summary.instances, "instances,", summary.polynomial, "polynomial,",
          summary.fast_path, "fast path,", len(summary.violations), "violations")
    print("   ", dict(kinds.most_common()))
