import logging
import os
import pickle
import time
from collections import Counter, deque
from dataclasses import dataclass, field, fields
from functools import cached_property
from multiprocessing import Pool
from typing import Iterator, Optional

from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .classify import Classification, classify
from .codes import DoodleCode, code_of, enumerate_codes
from .diagram import DoodleDiagram, canonical_diagram, canonical_key, find_removable_vertex_circles, is_minimal
from .dual import doodle_from_dual, is_admissible, planar_embed
from .exceptions import InvariantError
from .plane_graph import IncidenceMatrix

logger = logging.getLogger(__name__)

"""
    Enumeration of prime minimal doodles through their duals. The dual of a
    doodle with a largest region of p edges, seen from that region, is a disc
    with a ring of 2p boundary vertices and n+1-2p interior vertices cut into
    four-sided cells. The search fixes the boundary chords, then where interior
    vertices sit and which one each inside vertex hangs from, then completes the
    remaining edges row by row.
"""

IMPOSSIBLE = None


@dataclass(frozen=True, order=True)
class Chord:
    a: int
    b: int

    def crosses(self, other: 'Chord') -> bool:
        return self.a < other.a < self.b < other.b or other.a < self.a < other.b < self.b

    def __str__(self):
        return f"({self.a},{self.b})"


@dataclass(frozen=True)
class ChordRegion:
    """A piece of the disc cut out by chords: its ring vertices in cyclic order and its inside vertices."""
    vertices: tuple
    inside: tuple

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def faceable(self) -> bool:
        return self.size == 4 and not self.inside


@dataclass(frozen=True)
class ChordPattern:
    p: int
    chords: tuple

    @cached_property
    def regions(self) -> tuple:
        cycles = [tuple(range(2 * self.p))]
        for chord in self.chords:
            for i, cycle in enumerate(cycles):
                if chord.a in cycle and chord.b in cycle:
                    x, y = sorted((cycle.index(chord.a), cycle.index(chord.b)))
                    cycles[i:i + 1] = [cycle[x:y + 1], cycle[y:] + cycle[:x + 1]]
                    break
            else:
                raise InvariantError(f"chord {chord} fits no region of {self}")
        ends = {v for chord in self.chords for v in (chord.a, chord.b)}
        regions = [
            ChordRegion(cycle, tuple(sorted(v for v in cycle if v % 2 == 0 and v not in ends)))
            for cycle in cycles
        ]
        return tuple(sorted(regions, key=lambda region: tuple(sorted(region.vertices))))

    def requirement(self) -> Optional[int]:
        """Fewest interior vertices that could fill every region, or None if some region cannot be filled."""
        total = 0
        for region in self.regions:
            need = min_interior_for_region(region.size, region.faceable)
            if need is IMPOSSIBLE:
                return IMPOSSIBLE
            total += need
        return total

    def growth_bound(self) -> int:
        """A lower bound that never drops when chords are added: 4-gons holding an inside vertex cannot be split."""
        return 4 * sum(1 for region in self.regions if region.size == 4 and region.inside)

    def extended(self, chord: Chord) -> 'ChordPattern':
        return ChordPattern(self.p, self.chords + (chord,))

    def __str__(self):
        return ''.join(str(chord) for chord in self.chords) or '()'


@dataclass
class SearchStats:
    patterns: int = 0
    partials: int = 0
    matrices_tested: int = 0
    admissible: int = 0
    doodles: int = 0
    duplicates: int = 0
    vertex_circles_dropped: int = 0
    non_prime_tagged: int = 0

    def merge(self, other: 'SearchStats'):
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class SearchConfig:
    n: int
    workers: int = 1
    symmetry_reduction: bool = True
    dump_dir: Optional[str] = None


@dataclass(frozen=True)
class FoundDoodle:
    key: bytes
    diagram: DoodleDiagram
    classification: Classification
    code: DoodleCode


@dataclass
class SearchResult:
    n: int
    doodles: list
    stats: SearchStats = field(default_factory=SearchStats)
    elapsed: float = 0.0


def min_interior_for_region(boundary_edge_count: int, faceable: bool = False) -> Optional[int]:
    """
    Interior vertices needed to cut a chord region into four-sided cells. Odd
    regions and 2-gons cannot be cut; a 4-gon needs four unless it is a cell on
    its own; anything larger needs at least one.
    """
    if boundary_edge_count % 2 or boundary_edge_count == 2:
        return IMPOSSIBLE
    if boundary_edge_count == 4:
        return 0 if faceable else 4
    return 1


def admissible_chords(p: int) -> list:
    ring = 2 * p
    return [
        Chord(a, b)
        for a in range(ring)
        for b in range(a + 2, ring)
        if (a + b) % 2 and (a, b) != (0, ring - 1)
    ]


def enumerate_chord_patterns(p: int, interior_budget: int, symmetry_reduction: bool = True, stats: Optional[SearchStats] = None) -> list:
    """
    Breadth-first over chord patterns, each extended only by chords after its
    last one. Up to rotating and reflecting the ring every non-empty pattern
    contains a chord (0, b) with b odd and b <= p, so only those seed the worklist.
    """
    chords = admissible_chords(p)
    if symmetry_reduction:
        seeds = [Chord(0, b) for b in range(3, p + 1, 2)]
    else:
        seeds = chords
    found = []
    empty = ChordPattern(p, ())
    if empty.requirement() is not IMPOSSIBLE and empty.requirement() <= interior_budget:
        found.append(empty)
    queue = deque(ChordPattern(p, (seed,)) for seed in seeds)
    while queue:
        pattern = queue.popleft()
        if stats is not None:
            stats.patterns += 1
        if pattern.growth_bound() > interior_budget:
            continue
        need = pattern.requirement()
        if need is not IMPOSSIBLE and need <= interior_budget:
            found.append(pattern)
        last = pattern.chords[-1]
        for chord in chords:
            if chord > last and not any(chord.crosses(other) for other in pattern.chords):
                queue.append(pattern.extended(chord))
    found.sort(key=lambda pattern: (len(pattern.chords), pattern.chords))
    logger.debug(f"p={p}, budget={interior_budget}: {len(found)} chord patterns")
    return found


def _distributions(regions: tuple, total: int):
    if not regions:
        if total == 0:
            yield ()
        return
    region = regions[0]
    if region.size == 4:
        options = ([0] if not region.inside else []) + list(range(4, total + 1))
    else:
        options = range(1, total + 1)
    for count in options:
        if count <= total:
            for rest in _distributions(regions[1:], total - count):
                yield (count,) + rest


def _shared_assignments(items: tuple, labels: int, cap: int):
    """Restricted growth strings: each item joins an existing label before opening a new one."""
    assignment = []
    sizes = []

    def place(i):
        if i == len(items):
            yield tuple(assignment)
            return
        for label in range(min(len(sizes) + 1, labels)):
            if label == len(sizes):
                sizes.append(0)
            elif sizes[label] >= cap:
                continue
            sizes[label] += 1
            assignment.append(label)
            yield from place(i + 1)
            assignment.pop()
            sizes[label] -= 1
            if sizes[label] == 0 and label == len(sizes) - 1:
                sizes.pop()

    yield from place(0)


def _product(choices: list):
    if not choices:
        yield ()
        return
    for head in choices[0]:
        for rest in _product(choices[1:]):
            yield (head,) + rest


def enumerate_interior_choices(pattern: ChordPattern, interior_count: int, code: DoodleCode) -> Iterator[IncidenceMatrix]:
    """
    Spreads the interior vertices over the chord regions and hangs every inside
    vertex from one interior vertex of its region. Interior vertices are
    numbered region by region from 2p upwards.
    """
    p = pattern.p
    ring = 2 * p
    cap = code.p
    regions = pattern.regions
    for distribution in _distributions(regions, interior_count):
        per_region = []
        allocation = []
        for region, count in zip(regions, distribution):
            allocation.extend([region.vertices] * count)
            per_region.append(list(_shared_assignments(region.inside, count, cap)) if region.inside else [()])
        if any(not options for options in per_region):
            continue
        for choice in _product(per_region):
            matrix = IncidenceMatrix.ring(code.n, p)
            matrix.allocation = tuple(allocation)
            for chord in pattern.chords:
                matrix.add_edge(chord.a, chord.b)
            offset = ring
            for region, count, labels in zip(regions, distribution, choice):
                for vertex, label in zip(region.inside, labels):
                    matrix.add_edge(vertex, offset + label)
                offset += count
            yield matrix


class _Completion:
    """Row-by-row completion of one partial matrix; vertex degrees are final once their row is done."""

    def __init__(self, partial: IncidenceMatrix, code: DoodleCode, stats: Optional[SearchStats]):
        self.partial = partial
        self.code = code
        self.stats = stats
        self.size = partial.n + 1
        self.ring = partial.ring_size
        self.cap = code.p
        self.targets = code.valency_targets()
        self.counts = Counter()
        self.adj = [set() for _ in range(self.size)]
        for u, v in partial.edges():
            self.adj[u].add(v)
            self.adj[v].add(u)
        self.remaining = 2 * code.n - code.p - partial.disc_edge_count()
        self.colors = [v % 2 if v < self.ring else None for v in range(self.size)]
        for v in range(self.ring, self.size):
            seen = {1 - self.colors[u] for u in self.adj[v] if self.colors[u] is not None}
            if len(seen) > 1:
                self.remaining = -1
            self.colors[v] = seen.pop() if seen else None

    def valency(self, v: int) -> int:
        return len(self.adj[v]) + (1 if v < self.ring and v % 2 else 0)

    def same_region(self, u: int, v: int) -> bool:
        region = self.partial.allocation[v - self.ring]
        if u < self.ring:
            return u in region
        return self.partial.allocation[u - self.ring] == region

    def deficit(self, start: int) -> int:
        return sum(max(0, 3 - self.valency(w)) for w in range(start, self.size))

    def run(self) -> Iterator[IncidenceMatrix]:
        if self.remaining < 0:
            return
        yield from self.row(0)

    def row(self, u: int):
        if u == self.size:
            if self.remaining == 0:
                yield from self.leaf()
            return
        if self.colors[u] is None:
            for color in (0, 1):
                self.colors[u] = color
                yield from self.row(u)
            self.colors[u] = None
            return
        candidates = [
            v for v in range(max(u + 1, self.ring), self.size)
            if v not in self.adj[u] and self.same_region(u, v)
        ]
        yield from self.pick(u, candidates, 0)

    def pick(self, u: int, candidates: list, i: int):
        if i == len(candidates):
            valency = self.valency(u)
            if valency < 3 or self.counts[valency] >= self.targets.get(valency, 0):
                return
            if self.deficit(u + 1) > 2 * self.remaining:
                return
            self.counts[valency] += 1
            yield from self.row(u + 1)
            self.counts[valency] -= 1
            return
        yield from self.pick(u, candidates, i + 1)
        v = candidates[i]
        if self.remaining == 0 or self.valency(u) >= self.cap or self.valency(v) >= self.cap:
            return
        if self.colors[v] == self.colors[u] or self.adj[u] & self.adj[v]:
            return
        colored = self.colors[v] is None
        if colored:
            self.colors[v] = 1 - self.colors[u]
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.remaining -= 1
        yield from self.pick(u, candidates, i + 1)
        self.remaining += 1
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        if colored:
            self.colors[v] = None

    def leaf(self):
        matrix = self.partial.copy()
        for u in range(self.size):
            for v in self.adj[u]:
                if u < v:
                    matrix.add_edge(u, v)
        if self.stats is not None:
            self.stats.matrices_tested += 1
        if not is_admissible(matrix, self.code):
            return
        pieces, _ = connected_components(csr_matrix(matrix.entries), directed=False)
        if pieces != 1:
            raise InvariantError(f"admissible matrix with {pieces} components:\n{matrix.to_text()}")
        yield matrix


def complete_matrix(partial: IncidenceMatrix, code: DoodleCode, stats: Optional[SearchStats] = None) -> Iterator[IncidenceMatrix]:
    """
    Adds the missing interior-column edges until the disc holds 2n - p edges.
    Edges join opposite colors of the bipartition and never close a triangle;
    only admissible completions are yielded.
    """
    yield from _Completion(partial, code, stats).run()


def _search_task(task):
    """Stages 2 and 3 for one (code, pattern) pair, deduplicated locally."""
    code, pattern, want_dumps = task
    stats = SearchStats()
    found = {}
    dropped = set()
    dumps = []
    interior = code.n + 1 - 2 * pattern.p
    for partial in enumerate_interior_choices(pattern, interior, code):
        stats.partials += 1
        for matrix in complete_matrix(partial, code, stats):
            stats.admissible += 1
            if want_dumps:
                dumps.append(matrix.to_text())
            diagram = doodle_from_dual(planar_embed(matrix))
            if not is_minimal(diagram) or code_of(diagram) != code:
                raise InvariantError(f"matrix for {code} rebuilt a doodle with code {code_of(diagram)}")
            key = canonical_key(diagram)
            if key in found or key in dropped:
                stats.duplicates += 1
                continue
            if find_removable_vertex_circles(diagram):
                dropped.add(key)
                stats.vertex_circles_dropped += 1
                continue
            found[key] = canonical_diagram(diagram).partner
    return code, found, stats, dumps


def _tasks(config: SearchConfig, stats: SearchStats) -> list:
    tasks = []
    for code in enumerate_codes(config.n, prime_only=True):
        interior = config.n + 1 - 2 * code.p
        if interior < 0:
            logger.debug(f"Code {code} leaves no room for a ring of {2 * code.p} vertices")
            continue
        patterns = enumerate_chord_patterns(code.p, interior, config.symmetry_reduction, stats)
        logger.info(f"Code {code}: {len(patterns)} chord patterns, {interior} interior vertices")
        tasks.extend((code, pattern, config.dump_dir is not None) for pattern in patterns)
    return tasks


def _write_dumps(dump_dir: str, code: DoodleCode, dumps: list):
    os.makedirs(dump_dir, exist_ok=True)
    path = os.path.join(dump_dir, f"admissible_{str(code).replace(': ', '_').replace(',', '-')}.txt")
    with open(path, 'a') as f:
        for text in dumps:
            f.write(text + '\n')


def classify_merged(merged: dict, codes: dict, stats: SearchStats) -> list:
    """Classifies merged doodles in key order; the construction can emit non-prime ones, which are tagged."""
    doodles = []
    for key in sorted(merged):
        diagram = DoodleDiagram(merged[key])
        classification = classify(diagram)
        if not classification.is_prime:
            logger.warning(f"Non-prime doodle {key.hex()} (connectivity {classification.connectivity}), tagged {classification.prefix}")
            stats.non_prime_tagged += 1
        doodles.append(FoundDoodle(key, diagram, classification, codes[key]))
    return doodles


def enumerate_doodles(n: int, config: Optional[SearchConfig] = None) -> SearchResult:
    """
    Runs the three stages for every prime code of n, merges the per-task results
    by canonical key, and classifies the survivors. Non-prime doodles are kept, logged and
    tagged by their classification. Output order is canonical-key order whatever the worker count.
    """
    config = config or SearchConfig(n)
    started = time.monotonic()
    stats = SearchStats()
    tasks = _tasks(config, stats)
    merged = {}
    codes = {}

    def absorb(outcome):
        code, found, task_stats, dumps = outcome
        stats.merge(task_stats)
        if dumps:
            _write_dumps(config.dump_dir, code, dumps)
        for key, partner in found.items():
            if key in merged:
                stats.duplicates += 1
            else:
                merged[key] = partner
                codes[key] = code

    if config.workers > 1 and len(tasks) > 1:
        logger.info(f"Running {len(tasks)} tasks for n={n} on {config.workers} workers")
        with Pool(processes=config.workers) as pool:
            for outcome in pool.imap_unordered(_search_task, tasks):
                absorb(outcome)
    else:
        logger.info(f"Running {len(tasks)} tasks for n={n} in-process")
        for task in tasks:
            absorb(_search_task(task))

    doodles = classify_merged(merged, codes, stats)
    stats.doodles = len(doodles)
    elapsed = time.monotonic() - started
    logger.info(f"n={n}: {len(doodles)} doodles in {elapsed:.1f}s {stats.as_dict()}")
    return SearchResult(n, doodles, stats, elapsed)


class SearchCache:
    """
    Pickled search results, one file per crossing count. A file that fails to
    load is deleted so the next run rebuilds it.
    """

    def __init__(self, cache_dir: str):
        self.cache_dir = cache_dir
        os.makedirs(self.cache_dir, exist_ok=True)

    def path(self, n: int, symmetry_reduction: bool = True) -> str:
        suffix = '' if symmetry_reduction else '_full'
        return os.path.join(self.cache_dir, f"census_{n}{suffix}.pkl")

    def load(self, n: int, symmetry_reduction: bool = True) -> Optional[SearchResult]:
        path = self.path(n, symmetry_reduction)
        if not os.path.exists(path):
            return None
        try:
            with open(path, 'rb') as f:
                result = pickle.load(f)
            if not isinstance(result, SearchResult) or result.n != n:
                raise ValueError(f"unexpected cache content in {path}")
            # older caches lack newer stats fields
            result.stats.as_dict()
            logger.info(f"Loaded cached census for n={n} from {path}")
            return result
        except Exception as e:
            logger.warning(f"Cache {path} corrupted or unreadable: {e}. Rebuilding.")
            self.clear(n, symmetry_reduction)
            return None

    def save(self, result: SearchResult, symmetry_reduction: bool = True):
        path = self.path(result.n, symmetry_reduction)
        try:
            with open(path, 'wb') as f:
                pickle.dump(result, f)
            logger.info(f"Saved census cache to {path}")
        except Exception as e:
            logger.error(f"Failed to save census cache {path}: {e}", exc_info=True)

    def clear(self, n: int, symmetry_reduction: bool = True):
        path = self.path(n, symmetry_reduction)
        try:
            os.remove(path)
            logger.info(f"Deleted cache file {path}")
        except FileNotFoundError:
            pass
        except OSError as e:
            logger.error(f"Failed to delete cache file {path}: {e}")
