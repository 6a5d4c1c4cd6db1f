from doodles.diagram import DoodleDiagram, add_vertex_circle, connected_sum, one_point_union
from doodles.twin import TwinWord, closure

BORROMEAN_CYCLE_CODE = '(0+2,2+2,4+2)(1-2,3-2,5-2)'
POPPY_CYCLE_CODE = '(0+2,2+2,4+2,6+2)(1-2,3-2,5-2,7-2)'
CROSSED_CYCLE_CODE = '(0+2,2+2,4+2)(1+2,3+2,5+2)'


def borromean() -> DoodleDiagram:
    return closure(TwinWord(3, (1, 2) * 3))


def poppy() -> DoodleDiagram:
    return closure(TwinWord(3, (1, 2) * 4))


def kink() -> DoodleDiagram:
    """One crossing, one component, two monogons."""
    return DoodleDiagram((3, 2, 1, 0))


def two_circle_bigon() -> DoodleDiagram:
    """Two circles meeting twice."""
    return DoodleDiagram((7, 6, 5, 4, 3, 2, 1, 0))


def borromean_with_vertex_circle() -> DoodleDiagram:
    return add_vertex_circle(borromean(), 0)


def borromean_sum() -> DoodleDiagram:
    return connected_sum(borromean(), 0, borromean(), 0)


def borromean_union() -> DoodleDiagram:
    return one_point_union(borromean(), 0, borromean(), 0)


def relabeled(diagram: DoodleDiagram, order, mirror=False) -> DoodleDiagram:
    """Moves crossing c to order[c]; mirror reverses every crossing's slot order."""
    def move(h):
        s = h & 3
        return 4 * order[h >> 2] + ((-s) % 4 if mirror else s)

    partner = [0] * len(diagram.partner)
    for h, q in enumerate(diagram.partner):
        partner[move(h)] = move(q)
    return DoodleDiagram(tuple(partner), diagram.floating_circles)
