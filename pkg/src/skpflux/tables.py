"""Published eigenvalue tables, kept as printed strings.

Rows are (m, n); columns are the field settings in ``COLUMNS`` as (B, phi_AB).
Keeping the strings preserves the printed precision, which sets the
comparison tolerance.
"""

from decimal import Decimal

COLUMNS = ((0.0, 0.0), (4.0, 0.0), (0.0, 4.0), (4.0, 4.0))
ALPHAS = {1: 0.005, 2: 0.01}

_T1 = """
0 0 -0.224453125 -0.0000101592 -0.027740778 0.0001966517714
0 1 -0.082421125 -0.000041345 -0.019583291 0.0001808333134
0 2 -0.043305166 -0.000097367 -0.014852416 0.0001401207451
0 3 -0.027225347 -0.000178134 -0.011878189 0.00007460689558
1 0 -0.139473878 -0.000028872 -0.020427549 0.0002930090943
1 1 -0.061617341 -0.00008491 -0.015428064 0.0002520130983
1 2 -0.035300487 -0.00016569 -0.012289179 0.0001862168779
1 3 -0.023352861 -0.00027113 -0.010201018 0.00009571267932
-1 0 -0.139473878 0.000008601 -0.041415309 0.00009976076045
-1 1 -0.061617341 0.000002329 -0.026533035 0.0001091844533
-1 2 -0.035300487 -0.000028872 -0.018830334 0.00009361967227
-1 3 -0.023352861 -0.000084910 -0.014347073 0.00005315983329
"""

_T2 = """
0 0 -0.226701389 -0.000040648 -0.03209692 0.000786316
0 1 -0.0848845 -0.000165135 -0.02340324 0.000721113
0 2 -0.045873724 -0.000388322 -0.01841899 0.00055677
0 3 -0.029889043 -0.000709481 -0.01534527 0.000294021
1 0 -0.142507312 -0.000115352 -0.02491432 0.001168469
1 1 -0.064404298 -0.000338662 -0.01942501 0.001001876
1 2 -0.038052784 -0.000659943 -0.01603745 0.000736893
1 3 -0.026143059 -0.001078473 -0.01384463 0.000374247
-1 0 -0.142507312 0.000034421 -0.04556147 0.000399885
-1 1 -0.064404298 0.000009258 -0.03011213 0.000436608
-1 2 -0.038052784 -0.000115353 -0.02217152 0.00037343
-1 3 -0.026143059 -0.000338664 -0.01760814 0.000211096
"""


def _parse(block):
    rows = []
    for line in block.strip().splitlines():
        m, n, *vals = line.split()
        rows.append((int(m), int(n), tuple(vals)))
    return rows


TABLES = {1: _parse(_T1), 2: _parse(_T2)}


def printed_tolerance(text: str) -> float:
    """Half a unit in the last printed decimal place."""
    exp = Decimal(text).as_tuple().exponent
    return 0.5 * 10.0**exp


def entries(table: int):
    """Yield (m, n, B, phi_AB, printed_string) for every cell of a table."""
    for m, n, vals in TABLES[table]:
        for (B, phi), text in zip(COLUMNS, vals):
            yield m, n, B, phi, text
