"""Built-in problems: the Terai ideal J and Conca's ideal J1."""
from __future__ import annotations

from importlib import resources

from .parsing import ProblemFile, parse_map, parse_problem

TERAI_J = """\
ring x1..x6;
ideal J = x1*x2*x3, x1*x2*x4, x1*x3*x5, x1*x4*x6, x1*x5*x6, x2*x3*x6,
          x2*x4*x5, x2*x5*x6, x3*x4*x5, x3*x4*x6;
"""

# 3-minors of the symmetric 4x4 matrix with zero diagonal, in the order the
# row/column subsets enumerate them (rows lexicographic, then columns).
CONCA_J1 = """\
ring x1..x6;
ideal J1 = 2*x1*x2*x4,
           x1*x3*x4 + x1*x2*x5 - x1^2*x6,
           -x2*x3*x4 + x2^2*x5 - x1*x2*x6,
           -x3*x4^2 + x2*x4*x5 + x1*x4*x6,
           2*x1*x3*x5,
           -x3^2*x4 + x2*x3*x5 + x1*x3*x6,
           -x3*x4*x5 + x2*x5^2 - x1*x5*x6,
           2*x2*x3*x6,
           x3*x4*x6 + x2*x5*x6 - x1*x6^2,
           2*x4*x5*x6;
"""

# The same generators in the order they are usually printed.  The t-indexing
# of the Rees presentation follows the listing, so outputs differ.
CONCA_J1_PRINTED = """\
ring x1..x6;
ideal J1 = 2*x1*x2*x4,
           2*x1*x3*x5,
           2*x2*x3*x6,
           2*x4*x5*x6,
           x1*x3*x4 + x1*x2*x5 - x1^2*x6,
           x3*x4*x6 + x2*x5*x6 - x1*x6^2,
           -x2*x3*x4 + x2^2*x5 - x1*x2*x6,
           -x3^2*x4 + x2*x3*x5 + x1*x3*x6,
           -x3*x4^2 + x2*x4*x5 + x1*x4*x6,
           -x3*x4*x5 + x2*x5^2 - x1*x5*x6;
"""

PRESETS = {"terai-J": TERAI_J, "conca-J1": CONCA_J1, "conca-J1-printed": CONCA_J1_PRINTED}
MAPS = ("g32", "g33")

# Published deg_x > 1 censuses of in(P), keyed by (preset, order kind,
# precedence).  One cell carries two values that disagree with each other
# (a table entry and a worked example); both are kept and logged.
REFERENCE_CENSUS = {
    ("terai-J", "degrevlex", "xt"): ("(1,2):2,(2,2):2", "(1,2):2,(2,2):1"),
    ("terai-J", "degrevlex", "tx"): ("(1,2):2,(2,2):1",),
    ("terai-J", "lex", "xt"): ("(1,2):2,(2,2):1",),
    ("terai-J", "lex", "tx"): ("(1,2):2,(2,2):1",),
    ("conca-J1", "degrevlex", "xt"): ("(1,2):6,(1,3):1,(2,2):5,(4,2):1",),
    ("conca-J1", "degrevlex", "tx"): ("(1,2):6,(1,3):1,(2,2):3",),
    ("conca-J1", "lex", "xt"): ("(1,2):6,(2,2):3",),
    ("conca-J1", "lex", "tx"): ("(1,2):6,(2,2):5",),
}


def load_preset(name: str) -> ProblemFile:
    try:
        return parse_problem(PRESETS[name])
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def builtin_map(name: str) -> list[tuple[str, str]]:
    if name not in MAPS:
        raise KeyError(f"unknown built-in map {name!r}")
    text = resources.files("linres").joinpath("data").joinpath(f"{name}.map").read_text()
    return parse_map(text)
