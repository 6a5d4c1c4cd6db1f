import logging
import re
from dataclasses import dataclass
from typing import Callable, Optional

import networkx as nx

from .diagram import DoodleDiagram, crossing_of, slot_of
from .exceptions import CycleCodeError, DiagramError, InvariantError

logger = logging.getLogger(__name__)

LEFT = '-'
RIGHT = '+'

_CYCLE = re.compile(r'\(([^()]*)\)')
_ENTRY = re.compile(r'^\s*(\d+)\s*([+-])\s*(\d+)\s*$')


def hamiltonian_cycle(graph: nx.Graph, start=None, neighbors: Optional[Callable] = None) -> Optional[list]:
    """
    Backtracking search for a circuit through every node of graph, extending
    from start with neighbours in the order neighbors(node) lists them
    (graph adjacency order by default). A branch is dropped as soon as the
    unvisited nodes plus the two path ends stop being connected.
    """
    if neighbors is None:
        neighbors = graph.neighbors
    nodes = list(graph.nodes)
    if len(nodes) < 3:
        return None
    if start is None:
        start = nodes[0]
    path = [start]
    used = {start}

    def still_connected(end):
        rest = [v for v in nodes if v not in used] + [end, start]
        return nx.is_connected(graph.subgraph(rest))

    def rec(cell, num_left):
        if num_left == 0:
            return graph.has_edge(cell, start)
        for neighbor in neighbors(cell):
            if neighbor in used:
                continue
            used.add(neighbor)
            path.append(neighbor)
            if (num_left == 1 or still_connected(neighbor)) and rec(neighbor, num_left - 1):
                return True
            path.pop()
            used.discard(neighbor)
        return False

    return path if rec(start, len(nodes) - 1) else None


def rotation_neighbors(diagram: DoodleDiagram, c: int) -> list:
    """Crossings adjacent to c, counterclockwise from slot 0, without repeats."""
    seen = []
    for s in range(4):
        other = crossing_of(diagram.partner[4 * c + s])
        if other != c and other not in seen:
            seen.append(other)
    return seen


@dataclass(frozen=True)
class HamiltonianCircuit:
    """
    A circuit through all crossings. out_darts[i] leaves order[i] towards
    order[i+1] and in_darts[i] is where the circuit enters order[i]. Each chord
    is (i, j, side) over circuit positions with i < j; LEFT chords lie left of
    the direction of travel.
    """
    order: tuple
    out_darts: tuple
    in_darts: tuple
    chords: tuple

    @property
    def n(self) -> int:
        return len(self.order)

    def sides_are_non_crossing(self) -> bool:
        for side in (LEFT, RIGHT):
            same = [(i, j) for i, j, s in self.chords if s == side]
            for k, (a, b) in enumerate(same):
                for c, d in same[k + 1:]:
                    if a < c < b < d or c < a < d < b:
                        return False
        return True


@dataclass(frozen=True)
class CycleCode:
    """Chord cycles over circuit labels; each entry is (label, side, jump) with the jump taken mod n."""
    cycles: tuple

    @property
    def n(self) -> int:
        return sum(len(cycle) for cycle in self.cycles)

    def chords(self) -> list:
        """(source, target, side) for every entry, checking that each cycle closes up and every label appears once."""
        n = self.n
        labels = sorted(label for cycle in self.cycles for label, _, _ in cycle)
        if labels != list(range(n)):
            raise CycleCodeError(f"labels {labels} do not cover 0..{n - 1} exactly once")
        chords = []
        for cycle in self.cycles:
            for k, (label, side, jump) in enumerate(cycle):
                target = (label + jump) % n
                expected = cycle[(k + 1) % len(cycle)][0]
                if jump % n == 0 or target != expected:
                    raise CycleCodeError(f"entry {label}{side}{jump} lands on {target}, not {expected}")
                chords.append((label, target, side))
        return chords

    def sort_key(self) -> tuple:
        out = []
        for cycle in self.cycles:
            out.append(len(cycle))
            for label, side, jump in cycle:
                out.extend((label, 0 if side == RIGHT else 1, jump))
        return tuple(out)

    def __str__(self):
        return ''.join(
            '(' + ','.join(f"{label}{side}{jump}" for label, side, jump in cycle) + ')'
            for cycle in self.cycles
        )

    @classmethod
    def parse(cls, text: str) -> 'CycleCode':
        stripped = text.strip()
        groups = _CYCLE.findall(stripped)
        if not groups or _CYCLE.sub('', stripped).strip():
            raise CycleCodeError(f"bad cycle code {text!r}")
        cycles = []
        for group in groups:
            entries = []
            for part in group.split(','):
                match = _ENTRY.match(part)
                if not match:
                    raise CycleCodeError(f"bad cycle code entry {part!r}")
                entries.append((int(match.group(1)), match.group(2), int(match.group(3))))
            cycles.append(tuple(entries))
        code = cls(tuple(cycles))
        code.chords()
        return code


def find_hamiltonian(diagram: DoodleDiagram) -> Optional[HamiltonianCircuit]:
    """Returns a circuit with its chords split by side, or None when the search finds nothing."""
    if diagram.n < 3 or not diagram.is_connected:
        raise DiagramError(f"need a connected diagram with at least 3 crossings, got {diagram}")
    order = hamiltonian_cycle(diagram.simple_graph, 0, lambda c: rotation_neighbors(diagram, c))
    if order is None:
        logger.debug(f"No hamiltonian circuit in {diagram}")
        return None
    n = len(order)
    position = {c: i for i, c in enumerate(order)}
    out_darts = []
    for i, c in enumerate(order):
        following = order[(i + 1) % n]
        out_darts.append(next(4 * c + s for s in range(4) if crossing_of(diagram.partner[4 * c + s]) == following))
    in_darts = [diagram.partner[out_darts[i - 1]] for i in range(n)]

    def side_of(h):
        i = position[crossing_of(h)]
        turn = (slot_of(in_darts[i]) - slot_of(out_darts[i])) % 4
        ahead = (slot_of(h) - slot_of(out_darts[i])) % 4
        return LEFT if 0 < ahead < turn else RIGHT

    used = set(out_darts) | set(in_darts)
    chords = []
    for h, q in enumerate(diagram.partner):
        if h < q and h not in used:
            side = side_of(h)
            if side_of(q) != side:
                raise InvariantError(f"chord {h}-{q} changes side of the circuit")
            i, j = sorted((position[crossing_of(h)], position[crossing_of(q)]))
            chords.append((i, j, side))
    circuit = HamiltonianCircuit(tuple(order), tuple(out_darts), tuple(in_darts), tuple(sorted(chords)))
    if not circuit.sides_are_non_crossing():
        raise InvariantError("same-side chords cross")
    return circuit


def _code_from_chords(n: int, chords: list) -> CycleCode:
    at = {label: [] for label in range(n)}
    for k, (i, j, side) in enumerate(chords):
        at[i].append(k)
        at[j].append(k)
    used = set()
    cycles = []
    for start in range(n):
        if all(k in used for k in at[start]):
            continue
        entries = []
        label = start
        while True:
            options = []
            for k in at[label]:
                if k not in used:
                    i, j, side = chords[k]
                    target = j if i == label else i
                    options.append(((target - label) % n, k, target, side))
            if not options:
                break
            jump, k, target, side = min(options)
            used.add(k)
            entries.append((label, side, jump))
            label = target
            if label == start:
                break
        cycles.append(tuple(entries))
    return CycleCode(tuple(cycles))


def cycle_code(diagram: DoodleDiagram, circuit: HamiltonianCircuit) -> CycleCode:
    """
    Labels crossings 0..n-1 along the circuit and writes the chords as cycles.
    The label origin and the direction of travel are the ones giving the least
    code; travelling backwards swaps the two sides.
    """
    n = circuit.n
    best = None
    for shift in range(n):
        for reverse in (False, True):
            moved = []
            for i, j, side in circuit.chords:
                if reverse:
                    i, j = (-i) % n, (-j) % n
                    side = LEFT if side == RIGHT else RIGHT
                moved.append(((i + shift) % n, (j + shift) % n, side))
            code = _code_from_chords(n, moved)
            if best is None or code.sort_key() < best.sort_key():
                best = code
    return best


def _chords_cross(first, second) -> bool:
    a, b = sorted(first[:2])
    c, d = sorted(second[:2])
    return a < c < b < d or c < a < d < b


def diagram_from_cycle_code(n: int, code: CycleCode) -> DoodleDiagram:
    """
    Puts the crossings on a circle in label order and draws RIGHT chords on one
    side of it and LEFT chords on the other. Around each crossing the slots run:
    towards the next label, the left chords by increasing forward distance,
    towards the previous label, then the right chords by decreasing distance.
    """
    if code.n != n:
        raise CycleCodeError(f"code covers {code.n} labels, expected {n}")
    if n < 3:
        raise CycleCodeError(f"too few crossings: {n}")
    chords = code.chords()
    for side in (LEFT, RIGHT):
        same = [chord for chord in chords if chord[2] == side]
        for k, first in enumerate(same):
            if any(_chords_cross(first, second) for second in same[k + 1:]):
                raise CycleCodeError("not realizable as drawn")

    ends = {label: {LEFT: [], RIGHT: []} for label in range(n)}
    for idx, (source, target, side) in enumerate(chords):
        ends[source][side].append((((target - source) % n, idx), ('chord', idx, 0)))
        ends[target][side].append((((source - target) % n, -idx), ('chord', idx, 1)))

    slot = {}
    for label in range(n):
        left = [end for _, end in sorted(ends[label][LEFT])]
        right = [end for _, end in sorted(ends[label][RIGHT], reverse=True)]
        around = [('out', label)] + left + [('in', label)] + right
        if len(around) != 4:
            raise CycleCodeError(f"label {label} carries {len(around) - 2} chord ends, expected 2")
        for s, end in enumerate(around):
            slot[end] = 4 * label + s

    partner = [0] * (4 * n)
    for label in range(n):
        a, b = slot[('out', label)], slot[('in', (label + 1) % n)]
        partner[a], partner[b] = b, a
    for idx in range(len(chords)):
        a, b = slot[('chord', idx, 0)], slot[('chord', idx, 1)]
        partner[a], partner[b] = b, a
    return DoodleDiagram(tuple(partner))
