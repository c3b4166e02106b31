"""Isotopy-class representatives of Latin squares of order <= 5.

Each entry is the lexicographically least square of its class, row-major,
as produced by :func:`latinhc.verify.isotopy_classes` (checked by the tests).
"""

REPRESENTATIVES: dict[int, tuple[tuple[int, ...], ...]] = {
    1: ((1,),),
    2: ((1, 2, 2, 1),),
    3: ((1, 2, 3, 2, 3, 1, 3, 1, 2),),
    4: (
        (1, 2, 3, 4, 2, 1, 4, 3, 3, 4, 1, 2, 4, 3, 2, 1),
        (1, 2, 3, 4, 2, 1, 4, 3, 3, 4, 2, 1, 4, 3, 1, 2),
    ),
    5: (
        (1, 2, 3, 4, 5, 2, 1, 4, 5, 3, 3, 4, 5, 1, 2, 4, 5, 2, 3, 1, 5, 3, 1, 2, 4),
        (1, 2, 3, 4, 5, 2, 3, 4, 5, 1, 3, 4, 5, 1, 2, 4, 5, 1, 2, 3, 5, 1, 2, 3, 4),
    ),
}
