import glob
import json
import logging
import os
import re
import tempfile
from collections import Counter
from dataclasses import asdict, dataclass, field, fields
from typing import Optional

from .codes import DoodleCode
from .diagram import DoodleDiagram, diagram_from_key
from .exceptions import CatalogError
from .gauss import gauss_code
from .hamiltonian import cycle_code, find_hamiltonian
from .search import SearchResult
from .twin import to_twin_word

logger = logging.getLogger(__name__)

CATALOG_VERSION = '1.0'
NAME_RE = re.compile(r'^([PSN])(\d+)\^(\d+)_(\d+)$')


@dataclass(frozen=True)
class CatalogEntry:
    """One census doodle. key is the canonical key in hex; name reads X n^m_i."""
    name: str
    n: int
    m: int
    connectivity: int
    prime: bool
    super_prime: bool
    code: str
    gauss: str
    key: str
    hamiltonian_code: Optional[str]
    twin_word: str

    @property
    def prefix(self) -> str:
        if self.super_prime:
            return 'S'
        return 'P' if self.prime else 'N'

    @property
    def index(self) -> int:
        return int(NAME_RE.match(self.name).group(4))

    def sort_key(self) -> tuple:
        return (self.n, self.m, self.prefix, self.index)

    def diagram(self) -> DoodleDiagram:
        return diagram_from_key(bytes.fromhex(self.key))

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, line: str) -> 'CatalogEntry':
        try:
            data = json.loads(line)
            return cls(**{f.name: data[f.name] for f in fields(cls)})
        except (ValueError, KeyError, TypeError) as e:
            raise CatalogError(f"bad catalog line {line.strip()[:60]!r}: {e}") from e


def entry_name(prefix: str, n: int, m: int, index: int) -> str:
    return f"{prefix}{n}^{m}_{index}"


def describe(diagram: DoodleDiagram, name: str, classification, code: DoodleCode, key: bytes) -> CatalogEntry:
    circuit = find_hamiltonian(diagram)
    return CatalogEntry(
        name=name,
        n=diagram.n,
        m=classification.m,
        connectivity=classification.connectivity,
        prime=classification.is_prime,
        super_prime=classification.is_super_prime,
        code=str(code),
        gauss=str(gauss_code(diagram)),
        key=key.hex(),
        hamiltonian_code=str(cycle_code(diagram, circuit)) if circuit else None,
        twin_word=str(to_twin_word(diagram)),
    )


def build_entries(result: SearchResult) -> list:
    """Names the doodles of a search: indices run in canonical-key order within each (X, n, m) group."""
    counters = Counter()
    entries = []
    for found in sorted(result.doodles, key=lambda found: found.key):
        group = (found.classification.prefix, found.diagram.n, found.classification.m)
        counters[group] += 1
        name = entry_name(*group, counters[group])
        entries.append(describe(found.diagram, name, found.classification, found.code, found.key))
        logger.debug(f"Named {name} ({found.code})")
    return sorted(entries, key=CatalogEntry.sort_key)


@dataclass
class Catalog:
    n: int
    entries: list
    meta: dict = field(default_factory=dict)

    @staticmethod
    def path(catalog_dir: str, n: int) -> str:
        return os.path.join(catalog_dir, f"catalog_{n}.jsonl")

    @staticmethod
    def meta_path(catalog_dir: str, n: int) -> str:
        return os.path.join(catalog_dir, f"catalog_{n}.meta.json")

    @classmethod
    def from_search(cls, result: SearchResult, crossing_budget: Optional[int] = None) -> 'Catalog':
        meta = {
            'version': CATALOG_VERSION,
            'n': result.n,
            'crossing_budget': crossing_budget,
            'elapsed_seconds': round(result.elapsed, 3),
            'stats': result.stats.as_dict(),
        }
        return cls(result.n, build_entries(result), meta)

    def counts(self) -> Counter:
        """(m, prefix) -> number of entries."""
        return Counter((entry.m, entry.prefix) for entry in self.entries)

    def find(self, name: str) -> Optional[CatalogEntry]:
        return next((entry for entry in self.entries if entry.name == name), None)

    def write(self, catalog_dir: str) -> str:
        """Writes the catalog and its metadata sidecar, each through a temporary file and a rename."""
        os.makedirs(catalog_dir, exist_ok=True)
        target = self.path(catalog_dir, self.n)
        body = ''.join(entry.to_json() + '\n' for entry in sorted(self.entries, key=CatalogEntry.sort_key))
        try:
            _atomic_write(target, body)
            _atomic_write(self.meta_path(catalog_dir, self.n), json.dumps(self.meta, indent=2, sort_keys=True) + '\n')
        except OSError as e:
            logger.error(f"Failed to write catalog {target}: {e}", exc_info=True)
            raise
        logger.info(f"Wrote {len(self.entries)} entries to {target}")
        return target

    @classmethod
    def load(cls, catalog_dir: str, n: int) -> 'Catalog':
        target = cls.path(catalog_dir, n)
        if not os.path.exists(target):
            raise CatalogError(f"no catalog for n={n} at {target}")
        with open(target) as f:
            entries = [CatalogEntry.from_json(line) for line in f if line.strip()]
        meta = {}
        meta_file = cls.meta_path(catalog_dir, n)
        if os.path.exists(meta_file):
            try:
                with open(meta_file) as f:
                    meta = json.load(f)
            except ValueError as e:
                logger.warning(f"Ignoring unreadable catalog metadata {meta_file}: {e}")
        keys = [entry.key for entry in entries]
        if len(set(keys)) != len(keys):
            raise CatalogError(f"duplicate keys in {target}")
        return cls(n, entries, meta)


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(path) or '.'
    fd, tmp = tempfile.mkstemp(dir=directory, prefix='.tmp_', suffix='.part')
    try:
        with os.fdopen(fd, 'w') as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def available_crossing_counts(catalog_dir: str) -> list:
    found = []
    for path in glob.glob(os.path.join(catalog_dir, 'catalog_*.jsonl')):
        match = re.search(r'catalog_(\d+)\.jsonl$', path)
        if match:
            found.append(int(match.group(1)))
    return sorted(found)


def find_entry(catalog_dir: str, name: str) -> CatalogEntry:
    match = NAME_RE.match(name)
    if not match:
        raise CatalogError(f"bad entry name {name!r}")
    n = int(match.group(2))
    if n not in available_crossing_counts(catalog_dir):
        raise CatalogError(f"unknown entry {name}: no catalog for n={n} in {catalog_dir}")
    entry = Catalog.load(catalog_dir, n).find(name)
    if entry is None:
        raise CatalogError(f"unknown entry {name}")
    return entry


def census_table(catalogs: list, columns: int = 4) -> str:
    """
    One row per crossing count, one column per component count. A cell reads
    "a,b" with a the prime but not super-prime entries and b the super-prime
    ones; cells with neither are left empty. N entries are not counted.
    """
    columns = max([columns] + [entry.m for catalog in catalogs for entry in catalog.entries])
    header = ['n'] + [f"m={m}" for m in range(1, columns + 1)]
    rows = [header]
    for catalog in sorted(catalogs, key=lambda catalog: catalog.n):
        counts = catalog.counts()
        row = [str(catalog.n)]
        for m in range(1, columns + 1):
            prime, super_prime = counts[(m, 'P')], counts[(m, 'S')]
            row.append(f"{prime},{super_prime}" if prime or super_prime else '')
        rows.append(row)
    widths = [max(len(row[k]) for row in rows) for k in range(len(header))]
    return '\n'.join(
        ' | '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in rows
    ) + '\n'
