import logging
import re
from dataclasses import dataclass
from itertools import product

import networkx as nx

from .diagram import DoodleDiagram, components, crossing_of, is_minimal, rotate
from .exceptions import InvariantError, TwinWordError

logger = logging.getLogger(__name__)

"""
    Twin words and doodles. A word on k strands closes up into a braided
    doodle, one crossing per letter. Going back, the doodle is oriented, its
    crossings are smoothed into Seifert circles joined by bridges, and finger
    moves push edges across each other until the circles are nested; the word
    is then read off level by level.

    Crossing slots in a closure: 0 bottom left, 1 bottom right, 2 top right,
    3 top left.
"""

_HEADER = re.compile(r'^\s*k\s*=\s*(\d+)\s*:(.*)$', re.DOTALL)
_LETTERS = re.compile(r'(\s*t\d+)*\s*')
_LETTER = re.compile(r't(\d+)')


@dataclass(frozen=True)
class TwinWord:
    strands: int
    letters: tuple

    def __post_init__(self):
        object.__setattr__(self, 'letters', tuple(int(i) for i in self.letters))
        if self.strands < 1:
            raise TwinWordError(f"need at least one strand, got {self.strands}")
        for i in self.letters:
            if not 1 <= i <= self.strands - 1:
                raise TwinWordError(f"letter t{i} needs 1 <= i <= {self.strands - 1}")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        body = ' '.join(f"t{i}" for i in self.letters)
        return f"k={self.strands}: {body}".rstrip()

    @classmethod
    def parse(cls, text: str) -> 'TwinWord':
        header = _HEADER.match(text)
        body = header.group(2) if header else text
        if not _LETTERS.fullmatch(body):
            raise TwinWordError(f"bad twin word {text!r}")
        letters = tuple(int(i) for i in _LETTER.findall(body))
        strands = int(header.group(1)) if header else max(letters, default=0) + 1
        return cls(strands, letters)


def normalize(word: TwinWord) -> TwinWord:
    """Cancels t_i t_i and moves t_j left past t_i whenever j < i - 1, until neither applies."""
    letters = list(word.letters)
    i = 0
    while i < len(letters) - 1:
        first, second = letters[i], letters[i + 1]
        if first == second:
            del letters[i:i + 2]
            i = max(i - 1, 0)
        elif second < first - 1:
            letters[i], letters[i + 1] = second, first
            i = max(i - 1, 0)
        else:
            i += 1
    return TwinWord(word.strands, tuple(letters))


def closure(word: TwinWord) -> DoodleDiagram:
    """
    Stacks one crossing per letter from the bottom up, t_i swapping the strands
    at positions i-1 and i, then joins each top end to the bottom end below it.
    Strands no letter touches become floating circles.
    """
    partner = [0] * (4 * len(word.letters))
    bottom = [None] * word.strands
    open_ends = [None] * word.strands

    def attach(position, slot):
        end = open_ends[position]
        if end is None:
            bottom[position] = slot
        else:
            partner[slot], partner[end] = end, slot

    for c, i in enumerate(word.letters):
        base = 4 * c
        attach(i - 1, base)
        attach(i, base + 1)
        open_ends[i - 1] = base + 3
        open_ends[i] = base + 2

    floating = 0
    for position in range(word.strands):
        if open_ends[position] is None:
            floating += 1
        else:
            top, end = open_ends[position], bottom[position]
            partner[top], partner[end] = end, top
    return DoodleDiagram(tuple(partner), floating)


@dataclass(frozen=True)
class Orientation:
    """forward[h] is True when the strand leaves its crossing through slot h."""
    forward: tuple

    @classmethod
    def of_components(cls, diagram: DoodleDiagram, directions) -> 'Orientation':
        orbits = diagram.strand_orbits
        if len(directions) != len(orbits):
            raise TwinWordError(f"{len(directions)} directions for {len(orbits)} components")
        forward = [False] * len(diagram.partner)
        for orbit, along in zip(orbits, directions):
            for h in orbit.darts:
                forward[h if along else diagram.partner[h]] = True
        return cls(tuple(forward))

    def forward_dart(self, diagram: DoodleDiagram, h: int) -> int:
        return h if self.forward[h] else diagram.partner[h]


@dataclass(frozen=True)
class Bridge:
    crossing: int
    circles: tuple


@dataclass(frozen=True)
class SeifertGraph:
    """Circles are lists of forward darts in travel order; floating circles have no darts."""
    cycles: tuple
    floating: int
    bridges: tuple

    @property
    def cycle_count(self) -> int:
        return len(self.cycles) + self.floating

    @property
    def bridge_count(self) -> int:
        return len(self.bridges)

    @property
    def circle_of(self) -> dict:
        return {d: i for i, cycle in enumerate(self.cycles) for d in cycle}


def _smooth(diagram: DoodleDiagram, orientation: Orientation, arrival: int) -> int:
    """Oriented smoothing: arriving at slot a, leave through the slot opposite the other incoming slot."""
    other = rotate(arrival, 1)
    if orientation.forward[other]:
        other = rotate(arrival, 3)
    return rotate(other, 2)


def seifert_graph(diagram: DoodleDiagram, orientation: Orientation) -> SeifertGraph:
    forward = orientation.forward
    seen = set()
    cycles = []
    for start in range(len(diagram.partner)):
        if not forward[start] or start in seen:
            continue
        cycle = []
        d = start
        while d not in seen:
            seen.add(d)
            cycle.append(d)
            d = _smooth(diagram, orientation, diagram.partner[d])
        cycles.append(tuple(cycle))
    circle_of = {d: i for i, cycle in enumerate(cycles) for d in cycle}
    bridges = []
    for c in range(diagram.n):
        outs = [4 * c + s for s in range(4) if forward[4 * c + s]]
        bridges.append(Bridge(c, tuple(circle_of[d] for d in outs)))
    return SeifertGraph(tuple(cycles), diagram.floating_circles, tuple(bridges))


def v_move(diagram: DoodleDiagram, orientation: Orientation, dart_e: int, dart_f: int):
    """
    Pushes the edge of dart_e across the edge of dart_f inside the region both
    darts bound, creating crossings X = n and Y = n + 1 and a bigon between
    them. Returns the new diagram and the orientation carried over to it.
    """
    face_index = diagram.face_index
    if dart_e == dart_f or face_index[dart_e] != face_index[dart_f]:
        raise TwinWordError(f"darts {dart_e} and {dart_f} do not bound a common region")
    if diagram.edge_of(dart_e) == diagram.edge_of(dart_f):
        raise TwinWordError("a finger move needs two different edges")
    a, b = dart_e, dart_f
    a_end, b_end = diagram.partner[a], diagram.partner[b]
    x, y = 4 * diagram.n, 4 * diagram.n + 4
    partner = list(diagram.partner) + [0] * 8

    def link(h, q):
        partner[h], partner[q] = q, h

    link(a, x + 1)
    link(x + 3, y + 3)
    link(y + 1, a_end)
    link(b, y)
    link(y + 2, x)
    link(x + 2, b_end)

    forward = list(orientation.forward) + [False] * 8
    along_e = [a, x + 3, y + 1] if orientation.forward[a] else [a_end, y + 3, x + 1]
    along_f = [b, y + 2, x + 2] if orientation.forward[b] else [b_end, x, y]
    for h in along_e + along_f:
        forward[h] = True
        forward[partner[h]] = False
    return DoodleDiagram(tuple(partner), diagram.floating_circles), Orientation(tuple(forward))


def find_defect(diagram: DoodleDiagram, orientation: Orientation, seifert: SeifertGraph):
    """First pair of darts on one region whose edges lie on different circles and run the same way round it."""
    circle_of = seifert.circle_of
    for region in diagram.face_orbits:
        tagged = [
            (h, circle_of[orientation.forward_dart(diagram, h)], orientation.forward[h])
            for h in region.darts
        ]
        for i, (h, circle, sign) in enumerate(tagged):
            for q, other, other_sign in tagged[i + 1:]:
                if circle != other and sign == other_sign:
                    return h, q
    return None


def braid(diagram: DoodleDiagram, orientation: Orientation):
    """Applies finger moves until no region has a defect. Returns the diagram, its orientation and the move count."""
    budget = 4 * diagram.n * diagram.n + 16
    moves = 0
    while True:
        seifert = seifert_graph(diagram, orientation)
        defect = find_defect(diagram, orientation, seifert)
        if defect is None:
            return diagram, orientation, moves
        if moves >= budget:
            raise InvariantError(f"circles still not nested after {moves} finger moves")
        diagram, orientation = v_move(diagram, orientation, *defect)
        moves += 1


def _read_word(diagram: DoodleDiagram, orientation: Orientation) -> TwinWord:
    seifert = seifert_graph(diagram, orientation)
    circle_of = seifert.circle_of
    edge_circle = {diagram.edge_of(d): circle_of[d] for d in circle_of}
    face_index = diagram.face_index
    regions = diagram.face_orbits

    ends = [
        f for f, region in enumerate(regions)
        if len({edge_circle[diagram.edge_of(h)] for h in region.darts}) == 1
    ]
    if len(ends) != 2:
        raise InvariantError(f"braided diagram has {len(ends)} regions on a single circle")
    faces = nx.Graph()
    faces.add_nodes_from(range(len(regions)))
    faces.add_edges_from((face_index[h], face_index[q]) for h, q in enumerate(diagram.partner))
    path = nx.shortest_path(faces, ends[0], ends[1])

    level = {}
    start = {}
    for here, there in zip(path, path[1:]):
        h = next(h for h in regions[here].darts if face_index[diagram.partner[h]] == there)
        circle = edge_circle[diagram.edge_of(h)]
        if circle in level:
            raise InvariantError(f"cut crosses circle {circle} twice")
        level[circle] = len(level)
        start[circle] = seifert.cycles[circle].index(orientation.forward_dart(diagram, h))
    if len(level) != len(seifert.cycles):
        raise InvariantError("cut misses a circle")

    pair = {}
    for bridge in seifert.bridges:
        first, second = bridge.circles
        if abs(level[first] - level[second]) != 1:
            raise InvariantError(f"bridge at crossing {bridge.crossing} skips a level")
        pair[bridge.crossing] = (first, second)

    sequences = {}
    for circle, cycle in enumerate(seifert.cycles):
        size = len(cycle)
        sequences[circle] = [
            crossing_of(diagram.partner[cycle[(start[circle] + t) % size]]) for t in range(size)
        ]
    pointer = {circle: 0 for circle in sequences}
    by_level = sorted(sequences, key=lambda circle: level[circle])
    letters = []
    while len(letters) < diagram.n:
        for circle in by_level:
            if pointer[circle] == len(sequences[circle]):
                continue
            c = sequences[circle][pointer[circle]]
            first, second = pair[c]
            other = second if first == circle else first
            if pointer[other] < len(sequences[other]) and sequences[other][pointer[other]] == c:
                letters.append(min(level[circle], level[other]) + 1)
                pointer[circle] += 1
                pointer[other] += 1
                break
        else:
            raise InvariantError(f"reading deadlocked after {len(letters)} letters")
    return TwinWord(len(seifert.cycles), tuple(letters))


def to_twin_word(diagram: DoodleDiagram) -> TwinWord:
    """
    Tries every orientation of the components, braids each with finger moves
    and reads the word from the one needing the fewest moves.
    """
    if not is_minimal(diagram):
        raise TwinWordError("not minimal")
    best = None
    for directions in product((True, False), repeat=len(components(diagram))):
        braided, orientation, moves = braid(diagram, Orientation.of_components(diagram, directions))
        if best is None or moves < best[2]:
            best = (braided, orientation, moves)
    braided, orientation, moves = best
    word = _read_word(braided, orientation)
    logger.debug(f"{diagram}: {moves} finger moves, word of length {len(word)} on {word.strands} strands")
    return word
