import logging
from collections import Counter
from typing import Optional

import networkx as nx
import numpy as np

from .codes import DoodleCode
from .diagram import DoodleDiagram, Region, is_minimal
from .exceptions import DualGraphError
from .plane_graph import IncidenceMatrix, PlaneGraph

logger = logging.getLogger(__name__)


def _region_index(diagram: DoodleDiagram, infinite_region) -> int:
    if isinstance(infinite_region, Region):
        return diagram.face_index[infinite_region.darts[0]]
    return int(infinite_region)


def dual_graph(diagram: DoodleDiagram, infinite_region) -> PlaneGraph:
    """
    One vertex per region and one edge across each doodle edge. The dart dual to
    slot h leaves the region of h, and each region's darts keep their boundary
    order, so the dual's cells are exactly the crossings.
    """
    if not is_minimal(diagram):
        raise DualGraphError("not minimal")
    if diagram.n < 3 or not nx.is_biconnected(diagram.simple_graph):
        raise DualGraphError("not 2-connected")
    dual_dart = {}
    tail = []
    for h, q in enumerate(diagram.partner):
        if h < q:
            dual_dart[h] = len(tail)
            dual_dart[q] = len(tail) + 1
            tail.extend((diagram.face_index[h], diagram.face_index[q]))
    rotation = tuple(tuple(dual_dart[h] for h in region.darts) for region in diagram.face_orbits)
    return PlaneGraph(tuple(tail), rotation, _region_index(diagram, infinite_region))


def boundary_ring(dual: PlaneGraph) -> list:
    """
    The link of the infinite vertex as a closed walk, starting at a v-boundary
    vertex: the far corner of each infinite cell followed by its e-boundary vertex.
    """
    if dual.infinite is None:
        raise DualGraphError("no infinite vertex")
    ring = []
    for d in dual.rotation[dual.infinite]:
        cell = dual._cell(d)
        if len(cell) != 4:
            raise DualGraphError("not a quadrangulation")
        ring.append(dual.head(cell[1]))
        ring.append(dual.head(d))
    return ring


def boundary_is_embedded_circle(dual: PlaneGraph) -> bool:
    ring = boundary_ring(dual)
    return len(set(ring)) == len(ring)


def incidence_matrix_of(dual: PlaneGraph) -> IncidenceMatrix:
    """Reads an embedded dual into the ring convention of the search."""
    ring = boundary_ring(dual)
    if len(set(ring)) != len(ring):
        raise DualGraphError("boundary is not an embedded circle")
    rest = [v for v in range(dual.vertex_count) if v != dual.infinite and v not in set(ring)]
    index = {v: i for i, v in enumerate(ring + rest)}
    n = dual.vertex_count - 2
    entries = np.zeros((n + 1, n + 1), dtype=np.uint8)
    for d in range(0, len(dual.tail), 2):
        u, v = dual.tail[d], dual.tail[d ^ 1]
        if dual.infinite in (u, v):
            continue
        if entries[index[u], index[v]]:
            raise DualGraphError(f"double edge between {u} and {v}")
        entries[index[u], index[v]] = entries[index[v], index[u]] = 1
    return IncidenceMatrix(len(ring) // 2, entries)


def planar_embed(matrix: IncidenceMatrix) -> Optional[PlaneGraph]:
    """Adds the outside edges and embeds the result, or returns None when it is not planar."""
    is_planar, embedding = nx.check_planarity(matrix.graph())
    if not is_planar:
        return None
    return PlaneGraph.from_embedding(embedding, infinite=matrix.n + 1)


def is_admissible(matrix: IncidenceMatrix, code: DoodleCode) -> bool:
    valencies = matrix.valencies()
    if min(valencies) < 3:
        return False
    if Counter(valencies) != code.valency_targets():
        return False
    embedded = planar_embed(matrix)
    if embedded is None:
        return False
    return all(len(face) == 4 for face in embedded.faces)


def doodle_from_dual(dual: PlaneGraph) -> DoodleDiagram:
    """Puts a crossing in every cell; the cell's four sides, in order, become its slots."""
    slot = {}
    for f, face in enumerate(dual.faces):
        if len(face) != 4:
            raise DualGraphError("not a quadrangulation")
        for k, d in enumerate(face):
            slot[d] = 4 * f + k
    partner = [0] * len(slot)
    for d, s in slot.items():
        partner[s] = slot[d ^ 1]
    return DoodleDiagram(tuple(partner))
