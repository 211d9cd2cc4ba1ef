"""Named fixture presentations used by the tests and experiment scripts."""
from __future__ import annotations

from .presentation import Presentation, parse_presentation

# name -> presentation text
CORPUS: dict[str, str] = {
    "z6_amalgam": "<x1,x2 | x1^2 x2^2 = 1, x2^6 = 1>",
    "z6_amalgam_small": "<a,b | a^2 b^2 = 1, b^2 = 1>",
    "bs_2_3": "<a,b | a b^2 a^-1 b^-3>",
    "p_reduced": "<a,b | a^2, b^2, a^2 b^-2>",
    "q_reduced_literal": "<a,b | a^2, a^2 b^2, b^6>",
    "utilities": "<x1,x2,x3,x4 | x1^2 x3^-1 x4^-2 x2 x3^-1 x4^-1 x3^-1 x2^2 x1>",
    "p_amalgam": "<a,b | a^6, b^6, a^2 b^-2>",
    "q_amalgam": "<a,b | a^6, a^2 b^2>",
    "q_amalgam_reduced": "<a,b | a^2, a^2 b^2>",
    "trivial": "<a | a>",
    "free_rank_2": "<a,b | >",
    "rp2": "<a | a^2>",
    "z3": "<a | a^3>",
    "z5": "<a | a^5>",
    "torus": "<a,b | a b a^-1 b^-1>",
    "klein_bottle": "<a,b | a b a^-1 b>",
    "bs_1_2": "<a,b | a b a^-1 b^-2>",
    "bs_1_3": "<a,b | a b a^-1 b^-3>",
    "bs_2_2": "<a,b | a b^2 a^-1 b^-2>",
    "trefoil_wirtinger": "<a,b | a b a = b a b>",
    "torus_knot_2_3": "<a,b | a^2 = b^3>",
    "z2_times_z2": "<a,b | a^2, b^2, a b a^-1 b^-1>",
    "quaternion": "<a,b | a^2 = b^2, a b a = b>",
    "surface_genus_2": "<a,b,c,d | a b a^-1 b^-1 c d c^-1 d^-1>",
    "triangle_2_3_3": "<a,b | a^2, b^3, a b a b>",
    "dihedral_8": "<a,b | a^4, b^2, a b a b>",
    "lens_mixed": "<a,b | a^3, b^3, a b>",
    "three_gen_chain": "<a,b,c | a b c, a^2 b^-1, c a^-1>",
    "connected_free": "<a,b,c | c = a^2 b^2>",
    "commutator_square": "<a,b | a b a^-1 b^-1 a b a^-1 b^-1>",
}


def load(name: str) -> Presentation:
    return parse_presentation(CORPUS[name])


def items() -> list[tuple[str, Presentation]]:
    return [(name, parse_presentation(text)) for name, text in CORPUS.items()]
