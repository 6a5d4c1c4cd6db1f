import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from .exceptions import DiagramError

logger = logging.getLogger(__name__)

"""
    Doodle diagrams as rotation systems. Crossing c owns the four slots 4c..4c+3
    in counterclockwise order; a slot doubles as the dart leaving the crossing
    through it. partner[h] is the slot at the other end of h's edge, and the
    strand entering at slot h leaves through the opposite slot h+2.
"""


def crossing_of(h: int) -> int:
    return h >> 2


def slot_of(h: int) -> int:
    return h & 3


def rotate(h: int, k: int) -> int:
    """Slot k steps counterclockwise from h at the same crossing."""
    return (h & ~3) | ((h + k) & 3)


def opposite(h: int) -> int:
    return rotate(h, 2)


@dataclass(frozen=True)
class Region:
    """A face, given by the darts that run along its boundary with the face on their right."""
    darts: tuple

    @property
    def size(self) -> int:
        return len(self.darts)

    @property
    def crossings(self) -> tuple:
        return tuple(crossing_of(h) for h in self.darts)


@dataclass(frozen=True)
class Component:
    """An immersed circle: its outgoing darts in traversal order. Floating circles have none."""
    darts: tuple

    @property
    def crossings(self) -> tuple:
        return tuple(crossing_of(h) for h in self.darts)

    @property
    def self_crossing(self) -> bool:
        return len(set(self.crossings)) < len(self.darts)


@dataclass(frozen=True)
class DoodleDiagram:
    partner: tuple
    floating_circles: int = 0

    def __post_init__(self):
        partner = tuple(int(q) for q in self.partner)
        object.__setattr__(self, 'partner', partner)
        if len(partner) % 4:
            raise DiagramError(f"slot count {len(partner)} is not a multiple of 4")
        if self.floating_circles < 0:
            raise DiagramError("negative floating circle count")
        for h, q in enumerate(partner):
            if not 0 <= q < len(partner) or q == h or partner[q] != h:
                raise DiagramError(f"slot {h} is not matched to exactly one edge end")
        faces_per_crossing = {}
        for region in self.face_orbits:
            root = crossing_of(region.darts[0])
            faces_per_crossing[root] = faces_per_crossing.get(root, 0) + 1
        for piece in self.pieces:
            faces = sum(faces_per_crossing.get(c, 0) for c in piece)
            if faces != len(piece) + 2:
                raise DiagramError("non-planar rotation system")

    @property
    def n(self) -> int:
        return len(self.partner) // 4

    def next_dart(self, h: int) -> int:
        """Face successor: follow the edge, then turn right at the far crossing."""
        return rotate(self.partner[h], 1)

    def edge_of(self, h: int) -> int:
        return min(h, self.partner[h])

    @cached_property
    def face_orbits(self) -> tuple:
        seen = [False] * len(self.partner)
        regions = []
        for start in range(len(self.partner)):
            if seen[start]:
                continue
            darts = []
            h = start
            while not seen[h]:
                seen[h] = True
                darts.append(h)
                h = self.next_dart(h)
            regions.append(Region(tuple(darts)))
        return tuple(regions)

    @cached_property
    def face_index(self) -> dict:
        return {h: i for i, region in enumerate(self.face_orbits) for h in region.darts}

    @cached_property
    def strand_orbits(self) -> tuple:
        seen = [False] * len(self.partner)
        orbits = []
        for start in range(len(self.partner)):
            if seen[start]:
                continue
            darts = []
            h = start
            while not seen[h]:
                seen[h] = True
                seen[self.partner[h]] = True
                darts.append(h)
                h = opposite(self.partner[h])
            orbits.append(Component(tuple(darts)))
        return tuple(orbits)

    @cached_property
    def crossing_graph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.n))
        for h, q in enumerate(self.partner):
            if h < q:
                graph.add_edge(crossing_of(h), crossing_of(q), dart=h)
        return graph

    @cached_property
    def simple_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from((u, v) for u, v in self.crossing_graph.edges() if u != v)
        return graph

    @cached_property
    def pieces(self) -> tuple:
        return tuple(sorted(
            (tuple(sorted(part)) for part in nx.connected_components(self.crossing_graph)),
            key=lambda part: part[0],
        ))

    @property
    def is_connected(self) -> bool:
        if self.n == 0:
            return self.floating_circles == 1
        return len(self.pieces) == 1 and self.floating_circles == 0

    def __str__(self):
        return f"DoodleDiagram(n={self.n}, floating={self.floating_circles})"


def trace_regions(diagram: DoodleDiagram) -> tuple:
    if diagram.n == 0:
        raise DiagramError("no crossings")
    if not diagram.is_connected:
        raise DiagramError("disconnected")
    return diagram.face_orbits


def components(diagram: DoodleDiagram) -> tuple:
    return diagram.strand_orbits + tuple(Component(()) for _ in range(diagram.floating_circles))


def is_minimal(diagram: DoodleDiagram) -> bool:
    if not diagram.is_connected:
        return False
    return all(region.size > 2 for region in diagram.face_orbits)


def remove_crossings(diagram: DoodleDiagram, doomed: Iterable[int], drop_loops: bool = False) -> DoodleDiagram:
    """
    Deletes crossings while the strands through them carry straight on. Surviving
    slots are renumbered in crossing order. A component running only through
    deleted crossings becomes a floating circle, or vanishes when drop_loops is set.
    """
    doomed = set(doomed)
    keep = [c for c in range(diagram.n) if c not in doomed]
    index = {c: i for i, c in enumerate(keep)}
    partner = diagram.partner
    rewired = []
    for c in keep:
        for s in range(4):
            x = partner[4 * c + s]
            while crossing_of(x) in doomed:
                x = partner[opposite(x)]
            rewired.append(4 * index[crossing_of(x)] + slot_of(x))
    loops = sum(1 for comp in diagram.strand_orbits if all(c in doomed for c in comp.crossings))
    floating = diagram.floating_circles + (0 if drop_loops else loops)
    return DoodleDiagram(tuple(rewired), floating)


def reduce(diagram: DoodleDiagram, rng=None) -> DoodleDiagram:
    """
    Removes monogons (R1) and bigons (R2) until none are left. Without rng the
    first monogon goes first, then the first bigon; with a random.Random the next
    move is drawn from all available ones.
    """
    current = diagram
    moves = 0
    while True:
        monogons = [r for r in current.face_orbits if r.size == 1]
        bigons = [r for r in current.face_orbits if r.size == 2 and len(set(r.crossings)) == 2]
        if rng is not None:
            candidates = monogons + bigons
            if not candidates:
                break
            region = rng.choice(candidates)
        elif monogons:
            region = monogons[0]
        elif bigons:
            region = bigons[0]
        else:
            break
        current = remove_crossings(current, set(region.crossings))
        moves += 1
    if moves:
        logger.debug(f"Reduced {diagram.n} crossings to {current.n} in {moves} moves")
    return current


def _serialize_from(partner: Sequence[int], start: int, direction: int):
    """
    Breadth-first relabeling from one dart. Crossings are numbered in discovery
    order and each crossing's slots are counted from the slot it was reached by,
    counterclockwise (direction 1) or clockwise (direction -1).
    """
    first = crossing_of(start)
    label = {first: 0}
    base = {first: slot_of(start)}
    order = [first]
    out = bytearray()
    i = 0
    while i < len(order):
        c = order[i]
        for k in range(4):
            x = partner[4 * c + (base[c] + direction * k) % 4]
            cx = crossing_of(x)
            if cx not in label:
                label[cx] = len(order)
                base[cx] = slot_of(x)
                order.append(cx)
            out.append(label[cx])
            out.append(((slot_of(x) - base[cx]) * direction) % 4)
        i += 1
    return bytes(out), label, base


def _piece_form(diagram: DoodleDiagram, piece: Sequence[int]):
    best = None
    for c in piece:
        for s in range(4):
            for direction in (1, -1):
                serial, label, base = _serialize_from(diagram.partner, 4 * c + s, direction)
                if best is None or serial < best[0]:
                    best = (serial, label, base, direction)
    return best


def canonical_key(diagram: DoodleDiagram) -> bytes:
    """
    Least breadth-first serialization over every starting dart and both
    orientations, so relabelings and reflections share a key. Split diagrams
    key as their sorted piece keys followed by the floating-circle count.
    """
    keys = sorted(_piece_form(diagram, piece)[0] for piece in diagram.pieces)
    out = bytearray()
    for key in keys:
        out += len(key).to_bytes(2, 'big') + key
    out += diagram.floating_circles.to_bytes(2, 'big')
    return bytes(out)


def canonical_diagram(diagram: DoodleDiagram) -> DoodleDiagram:
    """Relabels a connected diagram into the labeling that produced its key."""
    if diagram.n == 0:
        return diagram
    if len(diagram.pieces) != 1:
        raise DiagramError("disconnected")
    serial, label, base, direction = _piece_form(diagram, diagram.pieces[0])
    partner = [0] * len(diagram.partner)

    def relabel(h):
        c = crossing_of(h)
        return 4 * label[c] + ((slot_of(h) - base[c]) * direction) % 4

    for h, q in enumerate(diagram.partner):
        partner[relabel(h)] = relabel(q)
    return DoodleDiagram(tuple(partner), diagram.floating_circles)


def _side(graph: nx.Graph, seeds: Iterable[int]) -> set:
    reached = set()
    for s in seeds:
        if s not in reached:
            reached |= nx.node_connected_component(graph, s)
    return reached


def find_removable_vertex_circles(diagram: DoodleDiagram) -> list:
    """
    A component is a removable vertex circle when it is simple, meets exactly
    four crossings, cuts off a single crossing on one side, and deleting it
    leaves a minimal diagram.
    """
    found = []
    for comp in diagram.strand_orbits:
        if comp.self_crossing or len(comp.darts) != 4:
            continue
        on_circle = set(comp.crossings)
        outside = diagram.simple_graph.subgraph(c for c in range(diagram.n) if c not in on_circle)
        left_seeds, right_seeds = [], []
        for h in comp.darts:
            for seeds, slot in ((left_seeds, rotate(h, 1)), (right_seeds, rotate(h, 3))):
                c = crossing_of(diagram.partner[slot])
                if c not in on_circle:
                    seeds.append(c)
        left, right = _side(outside, left_seeds), _side(outside, right_seeds)
        if left & right or sorted((len(left), len(right)))[0] != 1:
            continue
        if is_minimal(remove_crossings(diagram, on_circle, drop_loops=True)):
            logger.debug(f"Removable vertex circle through crossings {sorted(on_circle)}")
            found.append(comp)
    return found


def add_vertex_circle(diagram: DoodleDiagram, crossing: int) -> DoodleDiagram:
    """
    Surrounds a crossing with a small circle. New crossing n+s sits on the edge
    through slot s; its slot 0 faces the old crossing, 2 faces outwards, and 1/3
    carry the circle.
    """
    if not 0 <= crossing < diagram.n:
        raise DiagramError(f"no crossing {crossing}")
    n = diagram.n
    old = diagram.partner
    partner = list(old) + [0] * 16
    for s in range(4):
        h = 4 * crossing + s
        v = 4 * (n + s)
        q = old[h]
        partner[h] = v
        partner[v] = h
        if crossing_of(q) == crossing:
            partner[v + 2] = 4 * (n + slot_of(q)) + 2
        else:
            partner[v + 2] = q
            partner[q] = v + 2
        following = 4 * (n + (s + 1) % 4)
        partner[v + 3] = following + 1
        partner[following + 1] = v + 3
    return DoodleDiagram(tuple(partner), diagram.floating_circles)


def connected_sum(first: DoodleDiagram, first_dart: int, second: DoodleDiagram, second_dart: int) -> DoodleDiagram:
    """Cuts one edge of each diagram and crosses the loose ends over."""
    shift = 4 * first.n
    partner = list(first.partner) + [q + shift for q in second.partner]
    a1, b1 = first_dart, first.partner[first_dart]
    a2, b2 = second_dart + shift, second.partner[second_dart] + shift
    partner[a1], partner[b2] = b2, a1
    partner[b1], partner[a2] = a2, b1
    return DoodleDiagram(tuple(partner), first.floating_circles + second.floating_circles)


def one_point_union(first: DoodleDiagram, first_dart: int, second: DoodleDiagram, second_dart: int) -> DoodleDiagram:
    """Joins two diagrams through one new crossing placed on an edge of each."""
    shift = 4 * first.n
    x = 4 * (first.n + second.n)
    partner = list(first.partner) + [q + shift for q in second.partner] + [0] * 4
    ends = (
        first_dart,
        first.partner[first_dart],
        second_dart + shift,
        second.partner[second_dart] + shift,
    )
    for s, end in enumerate(ends):
        partner[x + s] = end
        partner[end] = x + s
    return DoodleDiagram(tuple(partner), first.floating_circles + second.floating_circles)


def diagram_from_key(key: bytes) -> DoodleDiagram:
    """
    Inverse of canonical_key. Each piece's serialization lists, slot by slot,
    the partner's crossing label and slot, so it is the partner table of the
    canonical labeling.
    """
    partner = []
    i = 0
    try:
        while len(key) - i > 2:
            size = int.from_bytes(key[i:i + 2], 'big')
            serial = key[i + 2:i + 2 + size]
            if len(serial) != size or size % 8:
                raise DiagramError(f"truncated key at byte {i}")
            shift = len(partner)
            partner.extend(shift + 4 * serial[j] + serial[j + 1] for j in range(0, size, 2))
            i += 2 + size
        floating = int.from_bytes(key[i:i + 2], 'big')
    except IndexError as e:
        raise DiagramError(f"bad canonical key: {e}") from e
    if len(key) - i != 2:
        raise DiagramError("bad canonical key: missing floating-circle count")
    return DoodleDiagram(tuple(partner), floating)
