import logging
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .diagram import DoodleDiagram, Region, components, crossing_of, rotate
from .exceptions import ClassificationError

logger = logging.getLogger(__name__)

V_REGION = 'v'
E_REGION = 'e'
INTERIOR_REGION = 'interior'


@dataclass(frozen=True)
class Classification:
    connectivity: int
    is_prime: bool
    is_super_prime: bool
    m: int

    @property
    def prefix(self) -> str:
        if self.is_super_prime:
            return 'S'
        return 'P' if self.is_prime else 'N'


@dataclass(frozen=True)
class BoundaryLabeling:
    """
    Region labels relative to one infinite region. sequence walks the
    infinite region's boundary and alternates e-region, v-region.
    """
    infinite: int
    labels: dict
    sequence: tuple
    semi_boundary_edges: frozenset

    def count(self, label: str) -> int:
        return sum(1 for value in self.labels.values() if value == label)


@dataclass(frozen=True)
class InnerComplement:
    crossings: frozenset
    edges: frozenset
    regions: tuple
    component_count: int
    min_valency: int
    every_edge_on_region: bool

    @property
    def vertex_count(self) -> int:
        return len(self.crossings)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def region_count(self) -> int:
        return len(self.regions)

    @property
    def betti_1(self) -> int:
        """Independent cycles left once the complement's regions are filled in."""
        return self.edge_count - self.vertex_count + self.component_count - self.region_count

    @property
    def is_empty(self) -> bool:
        return not self.crossings

    @property
    def is_acyclic(self) -> bool:
        return self.betti_1 == 0

    @property
    def is_disk(self) -> bool:
        return (
            self.component_count == 1
            and self.vertex_count - self.edge_count + self.region_count == 1
            and self.region_count >= 1
            and self.every_edge_on_region
        )


def vertex_connectivity(diagram: DoodleDiagram) -> int:
    """
    Largest k (at most 4) such that deleting fewer than k crossings never
    disconnects the crossing graph. Graphs on n vertices are capped at n - 1.
    """
    if diagram.n < 2:
        raise ClassificationError(f"degenerate: {diagram.n} crossings")
    graph = diagram.simple_graph
    cap = min(4, diagram.n - 1)
    nodes = list(graph.nodes)
    for size in range(cap):
        for removed in combinations(nodes, size):
            remaining = graph.subgraph(set(nodes) - set(removed))
            if not nx.is_connected(remaining):
                return size
    return cap


def classify(diagram: DoodleDiagram) -> Classification:
    connectivity = vertex_connectivity(diagram)
    return Classification(
        connectivity=connectivity,
        is_prime=connectivity >= 3,
        is_super_prime=connectivity >= 4,
        m=len(components(diagram)),
    )


def _region_cells(diagram: DoodleDiagram, region: Region):
    return set(region.crossings), {diagram.edge_of(h) for h in region.darts}


def _edge_ends(diagram: DoodleDiagram, edge: int) -> set:
    return {crossing_of(edge), crossing_of(diagram.partner[edge])}


def region_pair_criterion(diagram: DoodleDiagram) -> bool:
    """Any two regions are disjoint, share exactly one crossing, or share exactly one edge and its ends."""
    cells = [_region_cells(diagram, region) for region in diagram.face_orbits]
    for (v1, e1), (v2, e2) in combinations(cells, 2):
        shared_vertices, shared_edges = v1 & v2, e1 & e2
        if not shared_edges:
            if len(shared_vertices) > 1:
                return False
        elif len(shared_edges) > 1 or shared_vertices != _edge_ends(diagram, next(iter(shared_edges))):
            return False
    return True


def label_boundary(diagram: DoodleDiagram, infinite_region) -> BoundaryLabeling:
    """
    Regions across the infinite region's edges are e-regions; the region
    diagonally opposite the infinite region at each of its corners is a v-region.
    """
    if not isinstance(infinite_region, Region):
        infinite_region = diagram.face_orbits[int(infinite_region)]
    face_index = diagram.face_index
    infinite = face_index[infinite_region.darts[0]]
    labels = {}
    hits = {}
    sequence = []
    for h in infinite_region.darts:
        arrival = diagram.partner[h]
        across = face_index[arrival]
        corner = face_index[rotate(arrival, 3)]
        for region, label in ((across, E_REGION), (corner, V_REGION)):
            if region == infinite or labels.get(region, label) != label:
                raise ClassificationError("not prime or not minimal")
            labels[region] = label
            hits[region] = hits.get(region, 0) + 1
            sequence.append(label)
    if any(count > 1 for count in hits.values()):
        raise ClassificationError("not prime or not minimal")
    for region in range(len(diagram.face_orbits)):
        if region != infinite:
            labels.setdefault(region, INTERIOR_REGION)

    boundary_crossings = set(infinite_region.crossings)
    boundary_edges = {diagram.edge_of(h) for h in infinite_region.darts}
    semi = frozenset(
        diagram.edge_of(4 * c + s)
        for c in boundary_crossings
        for s in range(4)
        if diagram.edge_of(4 * c + s) not in boundary_edges
    )
    return BoundaryLabeling(infinite, labels, tuple(sequence), semi)


def inner_complement(diagram: DoodleDiagram, region) -> InnerComplement:
    """Crossings, edges and regions of the diagram with no contact with the given region's boundary."""
    if not isinstance(region, Region):
        region = diagram.face_orbits[int(region)]
    touched = set(region.crossings)
    inner = frozenset(c for c in range(diagram.n) if c not in touched)
    edges = frozenset(
        h for h, q in enumerate(diagram.partner)
        if h < q and crossing_of(h) in inner and crossing_of(q) in inner
    )
    regions = tuple(
        r for r in diagram.face_orbits
        if r != region and all(c in inner for c in r.crossings)
    )
    skeleton = nx.MultiGraph()
    skeleton.add_nodes_from(inner)
    skeleton.add_edges_from((crossing_of(h), crossing_of(diagram.partner[h])) for h in edges)
    covered = {diagram.edge_of(h) for r in regions for h in r.darts}
    return InnerComplement(
        crossings=inner,
        edges=edges,
        regions=regions,
        component_count=nx.number_connected_components(skeleton) if inner else 0,
        min_valency=min((d for _, d in skeleton.degree()), default=0),
        every_edge_on_region=edges <= covered,
    )
