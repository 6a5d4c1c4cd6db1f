import itertools
import logging
import re
from dataclasses import dataclass

from .diagram import DoodleDiagram, canonical_diagram, canonical_key, crossing_of, opposite, slot_of
from .exceptions import DiagramError, UnrealizableCodeError

logger = logging.getLogger(__name__)

TOKEN_RE = re.compile(r'^(\d+)([LR]?)$')

# local (in, out) slots of the earlier pass and of the later pass by mark
FIRST_PASS = (0, 2)
LATER_PASS = {'L': (3, 1), 'R': (1, 3)}


@dataclass(frozen=True)
class GaussCode:
    """
    Per-component crossing sequences. Each token is (label, mark) with 1-based
    labels; the mark tells whether the later pass through the crossing enters on
    the left (L) or the right (R) of the earlier one. None means unmarked.
    """
    components: tuple

    def __str__(self):
        return '/'.join(
            ','.join(f"{label}{mark or ''}" for label, mark in component)
            for component in self.components
        )

    @classmethod
    def parse(cls, text: str) -> 'GaussCode':
        components = []
        for chunk in text.strip().split('/'):
            if not chunk.strip():
                continue
            tokens = []
            for raw in chunk.split(','):
                match = TOKEN_RE.match(raw.strip())
                if not match:
                    raise DiagramError(f"bad Gauss token {raw.strip()!r}")
                tokens.append((int(match.group(1)), match.group(2) or None))
            components.append(tuple(tokens))
        return cls(tuple(components))

    @property
    def crossing_count(self) -> int:
        return len({label for component in self.components for label, _ in component})


def gauss_code(diagram: DoodleDiagram) -> GaussCode:
    if not diagram.is_connected:
        raise DiagramError("disconnected")
    if diagram.n == 0:
        return GaussCode(())
    canonical = canonical_diagram(diagram)
    labels = {}
    first_entry = {}
    marks = {}
    for comp in canonical.strand_orbits:
        for h in comp.darts:
            c = crossing_of(h)
            entry = slot_of(opposite(h))
            if c not in labels:
                labels[c] = len(labels) + 1
                first_entry[c] = entry
            else:
                marks[c] = 'L' if (entry - first_entry[c]) % 4 == 3 else 'R'
    return GaussCode(tuple(
        tuple((labels[crossing_of(h)], marks[crossing_of(h)]) for h in comp.darts)
        for comp in canonical.strand_orbits
    ))


def _occurrences(code: GaussCode) -> dict:
    seen = {}
    for i, component in enumerate(code.components):
        for j, (label, mark) in enumerate(component):
            seen.setdefault(label, []).append((i, j, mark))
    n = len(seen)
    if sorted(seen) != list(range(1, n + 1)):
        raise DiagramError(f"crossing labels must run 1..{n}")
    for label, places in seen.items():
        if len(places) != 2:
            raise DiagramError(f"crossing {label} appears {len(places)} times, expected twice")
        given = {mark for _, _, mark in places if mark}
        if len(given) > 1:
            raise DiagramError(f"crossing {label} carries both marks")
    return seen


def _build(code: GaussCode, seen: dict, marks: dict) -> DoodleDiagram:
    passes = {}
    for label, ((i1, j1, _), (i2, j2, _)) in seen.items():
        base = 4 * (label - 1)
        first, later = FIRST_PASS, LATER_PASS[marks[label]]
        passes[(i1, j1)] = (base + first[0], base + first[1])
        passes[(i2, j2)] = (base + later[0], base + later[1])
    partner = [0] * (4 * len(seen))
    for i, component in enumerate(code.components):
        for j in range(len(component)):
            out_slot = passes[(i, j)][1]
            in_slot = passes[(i, (j + 1) % len(component))][0]
            partner[out_slot] = in_slot
            partner[in_slot] = out_slot
    return DoodleDiagram(tuple(partner))


def rebuild_from_gauss(code) -> DoodleDiagram:
    """
    Rebuilds the rotation system of a Gauss code. Unmarked crossings are tried
    with both marks and the realization with the least canonical key wins.
    """
    if isinstance(code, str):
        code = GaussCode.parse(code)
    if not code.components:
        return DoodleDiagram((), 1)
    seen = _occurrences(code)
    fixed = {}
    free = []
    for label, places in seen.items():
        given = [mark for _, _, mark in places if mark]
        if given:
            fixed[label] = given[0]
        else:
            free.append(label)
    if len(free) > 16:
        logger.warning(f"Trying 2^{len(free)} mark assignments for an unmarked Gauss code")
    best = None
    for choice in itertools.product('LR', repeat=len(free)):
        marks = dict(fixed)
        marks.update(zip(free, choice))
        try:
            diagram = _build(code, seen, marks)
        except DiagramError:
            continue
        if not free:
            return diagram
        key = canonical_key(diagram)
        if best is None or key < best[0]:
            best = (key, diagram)
    if best is None:
        raise UnrealizableCodeError(f"unrealizable code: {code}")
    return best[1]
