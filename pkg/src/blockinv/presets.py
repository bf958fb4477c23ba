"""Named designs and form sets."""

from __future__ import annotations

from itertools import combinations

from .design import BlockDesign, parse_block_list, parse_symbolic

OTTAVIANI15 = ("1,3,2,0,4; 6,0,5,8,7; 9,10,13,11,12; 14,9,10,1,5; 1,3,2,6,11; "
               "12,4,5,8,7; 14,9,13,2,7; 14,10,13,3,8; 6,11,0,12,4")
OTTAVIANI15_ALT = ("0,1,2,3,4; 0,5,6,7,8; 9,10,11,12,13; 1,5,9,10,14; 1,2,3,6,11; "
                   "4,5,7,8,12; 2,7,9,13,14; 3,8,10,13,14; 0,4,6,11,12")
# Same design as OTTAVIANI15 written with letters a..o.
OTTAVIANI15_SYMBOLIC = "(bdcae)(gafih)(jknlm)(ojkbf)(bdcgl)(mefih)(ojnch)(okndi)(glame)"
ARONHOLD = "(abc)(abd)(acd)(bcd)"
CLEBSCH542 = "(abc)^2(ade)(adf)(bdf)(bef)(cde)(cef)"
DESIGN943 = "(abcd)(abgj)(aefg)(afhi)(bdef)(behi)(cdgh)(ceij)(cfhj)(dgij)"

# Generators of the order-12 automorphism group of OTTAVIANI15.
TAU = "(2 3)(7 8)(9 10)"
OMEGA = "(1 7 3 5 2 8)(9 13 10)(4 6)(11 12)"

PAPER8 = (
    (1, 0, 0, 0, 0),
    (0, 1, 0, 0, 0),
    (0, 0, 1, 0, 0),
    (0, 0, 0, 1, 0),
    (0, 0, 0, 0, 1),
    (1, 1, 1, 1, 1),
    (1, 2, 3, 2, 1),
    (1, 2, 1, 1, 2),
)


def catalecticant(k: int) -> BlockDesign:
    """Complete graph on k+1 points with every edge doubled (binary forms of degree 2k)."""
    if k < 1:
        raise ValueError("catalecticant needs k >= 1")
    blocks = []
    for i, j in combinations(range(k + 1), 2):
        blocks += [(i, j), (i, j)]
    return BlockDesign.from_blocks(blocks)


def quadric(n: int) -> BlockDesign:
    """Two copies of the full block on n+1 points (determinant of a quadratic form)."""
    if n < 1:
        raise ValueError("quadric needs n >= 1")
    block = tuple(range(n + 1))
    return BlockDesign.from_blocks([block, block])


_FIXED = {
    "ottaviani15": lambda: parse_block_list(OTTAVIANI15),
    "ottaviani15-alt": lambda: parse_block_list(OTTAVIANI15_ALT),
    "aronhold": lambda: parse_symbolic(ARONHOLD),
    "clebsch542": lambda: parse_symbolic(CLEBSCH542),
    "design943": lambda: parse_symbolic(DESIGN943),
}

FORM_PRESETS = {"paper8": PAPER8}


def design_names() -> list[str]:
    return sorted(_FIXED) + ["catalecticant:<k>", "quadric:<n>"]


def get_design(name: str) -> BlockDesign | None:
    """Resolve a preset name, or return None if it is not one."""
    if name in _FIXED:
        return _FIXED[name]()
    head, sep, arg = name.partition(":")
    if sep and head in ("catalecticant", "quadric"):
        try:
            value = int(arg)
        except ValueError:
            return None
        return catalecticant(value) if head == "catalecticant" else quadric(value)
    return None


def get_forms(name: str) -> tuple[tuple[int, ...], ...] | None:
    return FORM_PRESETS.get(name)
