import logging
import math
import xml.etree.ElementTree as ET

import numpy as np
from scipy.sparse import lil_matrix
from scipy.sparse.linalg import spsolve
from shapely.geometry import LineString, MultiLineString, box

from .diagram import DoodleDiagram, components, crossing_of, opposite
from .exceptions import DiagramError

logger = logging.getLogger(__name__)

"""
    SVG drawings of doodle diagrams. Crossings are placed by a barycentric
    (Tutte) layout with the crossings of the largest region pinned on a circle;
    each component is one closed path of quadratic curves that passes through
    every crossing it visits.
"""

SVG_NS = 'http://www.w3.org/2000/svg'
CANVAS = 400.0
MARGIN = 20.0
SAMPLES = 8
PALETTE = ('#d62728', '#1f77b4', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b', '#e377c2', '#17becf')


def _fmt(value: float) -> str:
    return '%.3f' % value


def tutte_layout(diagram: DoodleDiagram) -> np.ndarray:
    """
    Crossing positions, shape (n, 2). The largest region's crossings sit on the
    unit circle in boundary order; every other crossing is the average of its
    neighbours, found with one sparse solve per coordinate.
    """
    if diagram.n == 0:
        return np.zeros((0, 2))
    if len(diagram.pieces) != 1:
        raise DiagramError("disconnected")
    outer = max(diagram.face_orbits, key=lambda region: (region.size, -min(region.darts)))
    pinned = list(dict.fromkeys(outer.crossings))
    if len(pinned) < 3:
        pinned = list(range(diagram.n))
    positions = np.zeros((diagram.n, 2))
    for k, c in enumerate(pinned):
        angle = 2 * math.pi * k / len(pinned)
        positions[c] = (math.cos(angle), math.sin(angle))

    free = [c for c in range(diagram.n) if c not in set(pinned)]
    if not free:
        return positions
    index = {c: i for i, c in enumerate(free)}
    laplacian = lil_matrix((len(free), len(free)))
    rhs = np.zeros((len(free), 2))
    for h, q in enumerate(diagram.partner):
        u, v = crossing_of(h), crossing_of(q)
        if u == v or u not in index:
            continue
        laplacian[index[u], index[u]] += 1
        if v in index:
            laplacian[index[u], index[v]] -= 1
        else:
            rhs[index[u]] += positions[v]
    system = laplacian.tocsr()
    for axis in range(2):
        positions[free, axis] = np.atleast_1d(spsolve(system, rhs[:, axis]))
    return positions


def _through(start, point, end):
    """Control point making the quadratic curve from start to end pass through point at its midpoint."""
    return 2 * point - (start + end) / 2


def _sample(start, control, end):
    t = np.linspace(0.0, 1.0, SAMPLES)[:, None]
    return (1 - t) ** 2 * start + 2 * (1 - t) * t * control + t ** 2 * end


def component_curves(diagram: DoodleDiagram, positions: np.ndarray) -> list:
    """For each component, its (start, control, end) segments; one segment per crossing visited."""
    midpoint = {}
    for h, q in enumerate(diagram.partner):
        midpoint[h] = (positions[crossing_of(h)] + positions[crossing_of(q)]) / 2
    curves = []
    for comp in components(diagram):
        segments = []
        for h in comp.darts:
            arrival = diagram.partner[h]
            leaving = opposite(arrival)
            start, point, end = midpoint[h], positions[crossing_of(arrival)], midpoint[leaving]
            segments.append((start, _through(start, point, end), end))
        curves.append(segments)
    return curves


def render_svg(diagram: DoodleDiagram, title: str = '') -> str:
    """Returns the drawing as SVG text; equal diagrams give equal text."""
    positions = tutte_layout(diagram)
    curves = component_curves(diagram, positions)

    lines = [LineString(np.vstack([_sample(*segment) for segment in segments])) for segments in curves if segments]
    for comp, line in zip(components(diagram), lines):
        if not comp.self_crossing and not line.is_simple:
            logger.warning(f"Drawing of {title or diagram} has a curve touching itself away from its crossings")
    if lines and diagram.n:
        extent = box(*positions.min(axis=0), *positions.max(axis=0))
        minx, miny, maxx, maxy = MultiLineString(lines).union(extent).bounds
    else:
        minx, miny, maxx, maxy = -1.0, -1.0, 1.0, 1.0
    scale = (CANVAS - 2 * MARGIN) / max(maxx - minx, maxy - miny, 1e-9)

    def to_canvas(point):
        return MARGIN + (point[0] - minx) * scale, MARGIN + (maxy - point[1]) * scale

    svg = ET.Element('svg', xmlns=SVG_NS, width=_fmt(CANVAS), height=_fmt(CANVAS),
                     viewBox=f"0 0 {_fmt(CANVAS)} {_fmt(CANVAS)}")
    if title:
        ET.SubElement(svg, 'title').text = title
    group = ET.SubElement(svg, 'g')
    for k, segments in enumerate(curves):
        color = PALETTE[k % len(PALETTE)]
        if segments:
            x, y = to_canvas(segments[0][0])
            d = [f"M{_fmt(x)} {_fmt(y)}"]
            for start, control, end in segments:
                cx, cy = to_canvas(control)
                ex, ey = to_canvas(end)
                d.append(f"Q{_fmt(cx)} {_fmt(cy)} {_fmt(ex)} {_fmt(ey)}")
            d.append('Z')
            ET.SubElement(group, 'path', {'class': 'component', 'd': ' '.join(d), 'fill': 'none', 'stroke': color})
        else:
            # floating circle, drawn small in the corner
            r = MARGIN / 2
            cx = MARGIN + 2 * r * k
            d = f"M{_fmt(cx - r)} {_fmt(MARGIN)} A{_fmt(r)} {_fmt(r)} 0 1 0 {_fmt(cx + r)} {_fmt(MARGIN)} " \
                f"A{_fmt(r)} {_fmt(r)} 0 1 0 {_fmt(cx - r)} {_fmt(MARGIN)} Z"
            ET.SubElement(group, 'path', {'class': 'component', 'd': d, 'fill': 'none', 'stroke': color})
    for c in range(diagram.n):
        x, y = to_canvas(positions[c])
        ET.SubElement(group, 'circle', {'class': 'crossing', 'cx': _fmt(x), 'cy': _fmt(y), 'r': '3.000'})
    return ET.tostring(svg, encoding='unicode')


def write_svg(diagram: DoodleDiagram, path: str, title: str = ''):
    text = render_svg(diagram, title)
    with open(path, 'w') as f:
        f.write(text + '\n')
    logger.info(f"Wrote {path}")
