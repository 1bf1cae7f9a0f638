"""
Printed formulas versus re-derived ones
=======================================

Several published coefficient sets and eigenvalue equations do not follow
from the radial equations.  Each discrepancy is checked live against the
shooting oracle or the radial ODE; exactly one variant should survive.
"""

from nudirac.errata import resolve, table_rows

for row in table_rows(resolve()):
    print(f"{row['id']:<32} selected={row['selected'] or 'AMBIGUOUS':<10} {row['detail']}")
    print(f"{'':<32} printed:   {row['printed']}")
    print(f"{'':<32} corrected: {row['corrected']}")
