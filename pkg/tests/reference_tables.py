"""Frozen reference tables used across the test suite.

TABLE1 holds the Eulerian numbers A(n, i) for n up to 8 and TABLE2 the
two-sided numbers A(n, i, j) over the same range, both transcribed by hand
from the published tables. The tests recompute everything from scratch by
direct enumeration and by recurrence and compare against these frozen
copies, so a transcription slip would surface as a failure instead of
propagating silently.
"""

TABLE1 = {
    1: (1,),
    2: (1, 1),
    3: (1, 4, 1),
    4: (1, 11, 11, 1),
    5: (1, 26, 66, 26, 1),
    6: (1, 57, 302, 302, 57, 1),
    7: (1, 120, 1191, 2416, 1191, 120, 1),
    8: (1, 247, 4293, 15619, 15619, 4293, 247, 1),
}

TABLE2 = {
    1: ((1,),),
    2: (
        (1, 0),
        (0, 1),
    ),
    3: (
        (1, 0, 0),
        (0, 4, 0),
        (0, 0, 1),
    ),
    4: (
        (1, 0, 0, 0),
        (0, 10, 1, 0),
        (0, 1, 10, 0),
        (0, 0, 0, 1),
    ),
    5: (
        (1, 0, 0, 0, 0),
        (0, 20, 6, 0, 0),
        (0, 6, 54, 6, 0),
        (0, 0, 6, 20, 0),
        (0, 0, 0, 0, 1),
    ),
    6: (
        (1, 0, 0, 0, 0, 0),
        (0, 35, 21, 1, 0, 0),
        (0, 21, 210, 70, 1, 0),
        (0, 1, 70, 210, 21, 0),
        (0, 0, 1, 21, 35, 0),
        (0, 0, 0, 0, 0, 1),
    ),
    7: (
        (1, 0, 0, 0, 0, 0, 0),
        (0, 56, 56, 8, 0, 0, 0),
        (0, 56, 659, 440, 36, 0, 0),
        (0, 8, 440, 1520, 440, 8, 0),
        (0, 0, 36, 440, 659, 56, 0),
        (0, 0, 0, 8, 56, 56, 0),
        (0, 0, 0, 0, 0, 0, 1),
    ),
    8: (
        (1, 0, 0, 0, 0, 0, 0, 0),
        (0, 84, 126, 36, 1, 0, 0, 0),
        (0, 126, 1773, 1980, 405, 9, 0, 0),
        (0, 36, 1980, 8436, 4761, 405, 1, 0),
        (0, 1, 405, 4761, 8436, 1980, 36, 0),
        (0, 0, 9, 405, 1980, 1773, 126, 0),
        (0, 0, 0, 1, 36, 126, 84, 0),
        (0, 0, 0, 0, 0, 0, 0, 1),
    ),
}

# Published gamma data over the same range: the univariate gamma vectors of
# rows 4 and 5 and the two-variable basis expansions for the same n.
GAMMA_ROW_4 = (1, 8)
GAMMA_ROW_5 = (1, 22, 16)
GESSEL_4 = {(1, 0): 1, (2, 0): 7, (2, 1): 1}
GESSEL_5 = {(1, 0): 1, (2, 0): 16, (3, 0): 16, (2, 1): 6}
