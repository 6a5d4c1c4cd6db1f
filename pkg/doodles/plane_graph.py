import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import networkx as nx
import numpy as np

from .exceptions import DualGraphError

logger = logging.getLogger(__name__)

INFINITE = 'infinite'
E_BOUNDARY = 'e-boundary'
V_BOUNDARY = 'v-boundary'
INTERIOR = 'interior'


@dataclass(frozen=True)
class PlaneGraph:
    """
    A graph embedded in the sphere, stored by darts. Dart d runs from tail[d]
    and its reverse is d ^ 1; rotation[v] lists the darts leaving v in cyclic
    order. Faces are traced with the same turn rule as doodle regions.
    """
    tail: tuple
    rotation: tuple
    infinite: Optional[int] = None

    @property
    def vertex_count(self) -> int:
        return len(self.rotation)

    @property
    def edge_count(self) -> int:
        return len(self.tail) // 2

    def head(self, d: int) -> int:
        return self.tail[d ^ 1]

    @cached_property
    def _position(self) -> dict:
        return {d: i for darts in self.rotation for i, d in enumerate(darts)}

    def rotation_next(self, d: int) -> int:
        darts = self.rotation[self.tail[d]]
        return darts[(self._position[d] + 1) % len(darts)]

    def face_next(self, d: int) -> int:
        return self.rotation_next(d ^ 1)

    @cached_property
    def faces(self) -> tuple:
        seen = [False] * len(self.tail)
        faces = []
        for start in range(len(self.tail)):
            if seen[start]:
                continue
            darts = []
            d = start
            while not seen[d]:
                seen[d] = True
                darts.append(d)
                d = self.face_next(d)
            faces.append(tuple(darts))
        return tuple(faces)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: int) -> list:
        return [self.head(d) for d in self.rotation[v]]

    def satisfies_euler(self) -> bool:
        return self.vertex_count - self.edge_count + len(self.faces) == 2

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from((self.tail[d], self.tail[d ^ 1]) for d in range(0, len(self.tail), 2))
        return graph

    @cached_property
    def roles(self) -> tuple:
        """Vertex roles relative to the infinite vertex: e-boundary vertices touch it, v-boundary ones close its cells."""
        if self.infinite is None:
            return (INTERIOR,) * self.vertex_count
        roles = [INTERIOR] * self.vertex_count
        for d in self.rotation[self.infinite]:
            roles[self.head(d)] = E_BOUNDARY
            for cell_dart in self._cell(d)[1:-1]:
                if roles[self.head(cell_dart)] == INTERIOR:
                    roles[self.head(cell_dart)] = V_BOUNDARY
        roles[self.infinite] = INFINITE
        return tuple(roles)

    def _cell(self, d: int) -> list:
        cell = [d]
        nxt = self.face_next(d)
        while nxt != d:
            cell.append(nxt)
            nxt = self.face_next(nxt)
        return cell

    @classmethod
    def from_rotation_lists(cls, neighbors: dict, infinite: Optional[int] = None) -> 'PlaneGraph':
        """Builds a simple graph from cyclic neighbour lists keyed by vertices 0..V-1."""
        vertices = sorted(neighbors)
        if vertices != list(range(len(vertices))):
            raise DualGraphError("vertices must be numbered 0..V-1")
        dart_of = {}
        tail = []
        for u in vertices:
            for v in neighbors[u]:
                if u < v:
                    dart_of[(u, v)] = len(tail)
                    dart_of[(v, u)] = len(tail) + 1
                    tail.extend((u, v))
        try:
            rotation = tuple(tuple(dart_of[(u, v)] for v in neighbors[u]) for u in vertices)
        except KeyError as e:
            raise DualGraphError(f"neighbour lists are not symmetric at {e}") from e
        return cls(tuple(tail), rotation, infinite)

    @classmethod
    def from_embedding(cls, embedding: nx.PlanarEmbedding, infinite: Optional[int] = None) -> 'PlaneGraph':
        neighbors = {v: list(embedding.neighbors_cw_order(v)) for v in embedding.nodes}
        return cls.from_rotation_lists(neighbors, infinite)


@dataclass(eq=False)
class IncidenceMatrix:
    """
    The disc part of a dual graph over its n+1 finite vertices. Vertices
    0..2p-1 form the boundary ring with vertex 0 a v-boundary vertex, so odd
    ring vertices carry the outside edge to the infinite vertex. allocation,
    when set, names the chord region each interior vertex was placed in.
    """
    p: int
    entries: np.ndarray
    allocation: Optional[tuple] = field(default=None)

    @property
    def n(self) -> int:
        return self.entries.shape[0] - 1

    @property
    def ring_size(self) -> int:
        return 2 * self.p

    @classmethod
    def ring(cls, n: int, p: int) -> 'IncidenceMatrix':
        if 2 * p > n + 1:
            raise DualGraphError(f"ring of {2 * p} vertices does not fit {n + 1} vertices")
        entries = np.zeros((n + 1, n + 1), dtype=np.uint8)
        for i in range(2 * p):
            j = (i + 1) % (2 * p)
            entries[i, j] = entries[j, i] = 1
        return cls(p, entries)

    def copy(self) -> 'IncidenceMatrix':
        return IncidenceMatrix(self.p, self.entries.copy(), self.allocation)

    def add_edge(self, u: int, v: int):
        self.entries[u, v] = self.entries[v, u] = 1

    def remove_edge(self, u: int, v: int):
        self.entries[u, v] = self.entries[v, u] = 0

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.entries[u, v])

    def edges(self) -> list:
        rows, cols = np.nonzero(np.triu(self.entries, 1))
        return list(zip(rows.tolist(), cols.tolist()))

    def valency(self, v: int) -> int:
        outside = 1 if v < self.ring_size and v % 2 else 0
        return int(self.entries[v].sum()) + outside

    def valencies(self) -> list:
        return [self.valency(v) for v in range(self.n + 1)]

    def disc_edge_count(self) -> int:
        return int(self.entries.sum()) // 2

    def is_well_formed(self) -> bool:
        e = self.entries
        if not np.array_equal(e, e.T) or e.diagonal().any() or (e > 1).any():
            return False
        ring = self.ring_size
        return all(e[i, (i + 1) % ring] for i in range(ring))

    def graph(self) -> nx.Graph:
        """The whole dual graph: disc edges plus outside edges to vertex n+1."""
        graph = nx.Graph()
        infinite = self.n + 1
        graph.add_nodes_from(range(self.n + 2))
        graph.add_edges_from(self.edges())
        graph.add_edges_from((infinite, v) for v in range(1, self.ring_size, 2))
        return graph

    def to_text(self) -> str:
        rows = [''.join(str(int(x)) for x in row) for row in self.entries]
        return '\n'.join([f"{self.n} {self.p}"] + rows) + '\n'

    @classmethod
    def from_text(cls, text: str) -> 'IncidenceMatrix':
        lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
        try:
            n, p = (int(x) for x in lines[0].split())
            entries = np.array([[int(ch) for ch in line] for line in lines[1:]], dtype=np.uint8)
        except (ValueError, IndexError) as e:
            raise DualGraphError(f"bad incidence matrix text: {e}") from e
        if entries.shape != (n + 1, n + 1):
            raise DualGraphError(f"expected {n + 1} rows of {n + 1} entries, got {entries.shape}")
        matrix = cls(p, entries)
        if not matrix.is_well_formed():
            raise DualGraphError("matrix is not symmetric 0/1 with a zero diagonal and a full boundary ring")
        return matrix
