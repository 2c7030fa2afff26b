"""Named example metrics used by tests, scripts and the CLI corpus."""
from fractions import Fraction
from itertools import product

from .metric import metric_from_graph, validate_metric


def m_cut():
    return validate_metric({("s", "s"): 0, ("t", "t"): 0, ("s", "t"): 1, ("t", "s"): 0})


def m_k3():
    pts = ("s0", "s1", "s2")
    return validate_metric({(x, y): int(x != y) for x in pts for y in pts}, pts)


def m_c4():
    pts = ("p", "q", "r", "s")
    return metric_from_graph(pts, [("p", "q"), ("q", "r"), ("r", "s"), ("s", "p")])


def m_ov4():
    pts = ("p", "q", "r", "s")
    d = {(x, x): 0 for x in pts}
    d.update({("p", "q"): 2, ("q", "p"): 1, ("q", "r"): 1, ("r", "q"): 2,
              ("r", "s"): 2, ("s", "r"): 1, ("s", "p"): 1, ("p", "s"): 2,
              ("p", "r"): 3, ("r", "p"): 3, ("q", "s"): 3, ("s", "q"): 3})
    return validate_metric(d, pts)


def star(leaves, center="r"):
    """leaves: {name: (mu(leaf, center), mu(center, leaf))}; leaf-to-leaf
    distances go through the center."""
    pts = (center,) + tuple(leaves)
    d = {}
    for x in pts:
        for y in pts:
            if x == y:
                d[(x, y)] = 0
            elif x == center:
                d[(x, y)] = leaves[y][1]
            elif y == center:
                d[(x, y)] = leaves[x][0]
            else:
                d[(x, y)] = Fraction(leaves[x][0]) + Fraction(leaves[y][1])
    return validate_metric(d, pts)


def m_star3b():
    return star({"a": (2, 1), "b": (2, 1), "c": (2, 1)})


def m_star3u():
    return star({"a": (1, 1), "b": (1, 1), "c": (1, 1)})


def m_star2k():
    # two compatible leaves with scale factor 2: a 3-chain lattice
    return star({"x1": (1, 2), "x2": (4, 2)})


def m_star4_case1():
    # unbiased families {x1, x2} and {y1, y2} with k = 2 and l = 3
    return star({"x1": (1, 2), "x2": (4, 2), "y1": (3, 1), "y2": (3, 9)})


def m_star_case2():
    # three symmetric leaves plus an unbiased pair
    return star({"x1": (1, 1), "x2": (1, 1), "x3": (2, 2),
                 "y1": (1, 2), "y2": (4, 2)})


def m_c5():
    pts = tuple(f"v{i}" for i in range(5))
    return metric_from_graph(pts, [(pts[i], pts[(i + 1) % 5]) for i in range(5)])


def m_k33():
    left, right = ("a", "b", "c"), ("1", "2", "3")
    return metric_from_graph(left + right, [(u, v) for u in left for v in right])


def m_cube3():
    """Rank-3 Boolean lattice; per coordinate (up, down) lengths
    (1, 2), (2, 1), (1, 1)."""
    lens = [(1, 2), (2, 1), (1, 1)]
    pts = tuple("".join(map(str, bits)) for bits in product((0, 1), repeat=3))
    d = {}
    for x in pts:
        for y in pts:
            v = 0
            for i in range(3):
                if x[i] == "0" and y[i] == "1":
                    v += lens[i][0]
                elif x[i] == "1" and y[i] == "0":
                    v += lens[i][1]
            d[(x, y)] = v
    return validate_metric(d, pts)


def m_k23():
    # M3 lattice: bottom, three atoms, top
    return metric_from_graph(("o", "a", "b", "c", "i"),
                             [("o", "a"), ("o", "b"), ("o", "c"),
                              ("a", "i"), ("b", "i"), ("c", "i")])


def m_path3():
    return metric_from_graph(("u", "v", "w"), [("u", "v"), ("v", "w")],
                             {("u", "v"): 1, ("v", "u"): 3, ("v", "w"): 2, ("w", "v"): 1})


FIXTURES = {
    "M_CUT": m_cut,
    "M_K3": m_k3,
    "M_C4": m_c4,
    "M_OV4": m_ov4,
    "M_STAR3B": m_star3b,
    "M_STAR3U": m_star3u,
    "M_STAR2K": m_star2k,
    "M_STAR4X": m_star4_case1,
    "M_STAR5L": m_star_case2,
    "M_C5": m_c5,
    "M_K33": m_k33,
    "M_CUBE3": m_cube3,
    "M_K23": m_k23,
    "M_PATH3": m_path3,
}


def get(name):
    return FIXTURES[name]()
