"""
Why is a quotient non-negative?
===============================

The cascade collects every cheap reason it can find before expanding.
Each certificate can be re-checked on its own.
"""

from cgfpos import QuotientSpec, certify_nonnegativity, verify_certificate

cases = {
    "far apart": QuotientSpec((25, 30), (2, 3)),
    "divisible pairs": QuotientSpec((60, 66, 72), (10, 11, 12)),
    "flat pieces": QuotientSpec((255, 256, 257), (15, 16, 17)),
    "subset test fails": QuotientSpec((2, 3, 3, 8, 12), (1, 1, 4, 4, 6)),
    "negative": QuotientSpec((105, 3, 5, 7), (35, 21, 15, 1)),
}

for name, spec in cases.items():
    report = certify_nonnegativity(spec)
    print(f"{name:18s} nonnegative={report.nonnegative}")
    for cert in report.certificates:
        print("   ", cert, "ok" if verify_certificate(spec, cert) else "REJECTED")
