"""Frozen reference values for cross-validation.

REFERENCE_CTABLES holds the known coefficient tables of the polynomials
c_{r,l}(x) for 1 <= r <= 5 (ascending powers of x).  The pipeline must
reproduce every entry exactly; these are fixed, hand-transcribed data,
never derived from the code they check.
"""

from __future__ import annotations

REFERENCE_CTABLES: dict[int, list[list[int]]] = {
    1: [
        [1],
        [3, -2],
    ],
    2: [
        [3, -6, 2],
        [5, -10, 4],
        [10, -15, 6],
    ],
    3: [
        [12, -52, 78, -48, 12],
        [18, -76, 112, -68, 16],
        [27, -95, 128, -94, 40, -8],
        [35, -84, 70, -20],
    ],
    4: [
        [68, -544, 2011, -4854, 8938, -12986, 14422, -11780, 6800, -2624, 608, -64],
        [88, -636, 1995, -3754, 5074, -5430, 4562, -2816, 1168, -288, 32],
        [122, -770, 2123, -3506, 3940, -3072, 1584, -480, 64],
        [140, -691, 1434, -1665, 1151, -448, 76],
        [126, -420, 540, -315, 70],
    ],
    5: [
        [473, -5812, 34630, -134895, 384546, -838332, 1416868, -1859729,
         1888165, -1468200, 858300, -365200, 106800, -19200, 1600],
        [559, -6222, 32664, -109535, 265560, -490864, 701932, -773549,
         648879, -406058, 183512, -56608, 10672, -928],
        [690, -6656, 29713, -82642, 160896, -229588, 242120, -186355,
         101592, -37128, 8160, -816],
        [771, -6237, 22806, -50268, 74031, -75151, 52111, -23586, 6276, -744],
        [693, -4316, 11679, -18049, 17237, -10148, 3396, -496],
        [462, -1980, 3465, -3080, 1386, -252],
    ],
}
