"""Reference tables used by the census verification commands and the acceptance suite."""

from __future__ import annotations

# seven generic plane types in TP^5: name, trees 1..6, orbit size
DR36_TYPES = (
    ("EEEE", ("23 6 45", "13 5 46", "12 4 56", "15 3 26", "14 2 36", "24 1 35"), 30),
    ("EEEG", ("26 5 34", "16 5 34", "14 2 56", "13 2 56", "12 3 46", "12 3 45"), 240),
    ("EEFF(a)", ("25 6 34", "15 6 34", "12 5 46", "12 5 36", "12 6 34", "12 5 34"), 90),
    ("EEFF(b)", ("25 6 34", "15 6 34", "12 6 45", "12 6 35", "12 6 34", "12 5 34"), 90),
    ("EEFG", ("25 6 34", "15 6 34", "24 1 56", "23 1 56", "12 6 34", "12 5 34"), 360),
    ("EFFG", ("34 2 56", "34 1 56", "12 6 45", "12 6 35", "12 6 34", "12 5 34"), 180),
    ("FFFGG", ("34 2 56", "34 1 56", "12 4 56", "12 3 56", "12 6 34", "12 5 34"), 15),
)

DR36_MAXIMAL_CELLS = 1005
DR36_RAYS = 65

DR37_FVECTOR_MOD_SYM = (5, 30, 107, 217, 218, 94, 1)
DR37_FVECTOR = (616, 13860, 101185, 315070, 431025, 211365, 30)
DR37_TOP_STABILIZER = 168

# nine caterpillar trees on eight leaves without a metric realisation
NONREGULAR_NINE = (
    "C(24,6598,37)", "C(14,5768,39)", "C(17,5846,29)",
    "C(12,6579,38)", "C(26,4198,37)", "C(14,5729,38)",
    "C(13,5894,26)", "C(15,7346,29)", "C(15,7468,23)",
)

LOZENGE_TILINGS = {1: 1, 2: 3, 3: 18, 4: 187}

PAPPUS_COUNTS = {"split": 3, "graves": 6, "connector": 9, "edges": 30, "triangles": 1}
PAPPUS_TRIANGLE = ((1, 6, 7), (2, 5, 8), (3, 4, 9))
PAPPUS_CONNECTOR_CELLS = (51, 40, 40, 40, 36, 36, 36)
PAPPUS_GRAVES_CELL = 52
