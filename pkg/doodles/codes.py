import logging
from collections import Counter
from dataclasses import dataclass

from .diagram import DoodleDiagram, is_minimal
from .exceptions import CodeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class DoodleCode:
    """
    Crossing count plus the face-size spectrum. faces[k] is the number of
    (k+3)-gons; trailing zeros are trimmed so equal codes compare equal.
    """
    n: int
    faces: tuple

    def __post_init__(self):
        faces = list(self.faces)
        while faces and faces[-1] == 0:
            faces.pop()
        object.__setattr__(self, 'faces', tuple(faces))
        if any(f < 0 for f in faces):
            raise CodeError(f"negative face count in {faces}")

    def f(self, size: int) -> int:
        k = size - 3
        return self.faces[k] if 0 <= k < len(self.faces) else 0

    @property
    def p(self) -> int:
        """Largest region size present."""
        return len(self.faces) + 2

    @property
    def region_count(self) -> int:
        return sum(self.faces)

    def satisfies_euler(self) -> bool:
        total = sum(self.faces)
        weighted = sum((k + 3) * f for k, f in enumerate(self.faces))
        excess = sum((k - 1) * f for k, f in enumerate(self.faces) if k >= 2)
        return total == self.n + 2 and weighted == 4 * self.n and self.f(3) == 8 + excess

    def valency_targets(self) -> Counter:
        """Dual vertex valencies over the n+1 finite regions (one p-gon is infinite)."""
        targets = Counter({k + 3: f for k, f in enumerate(self.faces) if f})
        targets[self.p] -= 1
        return +targets

    def __str__(self):
        return f"{self.n}: " + ','.join(str(f) for f in self.faces)

    @classmethod
    def parse(cls, text: str) -> 'DoodleCode':
        try:
            head, _, tail = text.partition(':')
            faces = tuple(int(part) for part in tail.split(',') if part.strip())
            return cls(int(head), faces)
        except ValueError as e:
            raise CodeError(f"bad doodle code {text!r}: {e}") from e


def _larger_faces(size: int, top: int, budget: int):
    """Counts for face sizes size..top with sum of (i-3)*f_i at most budget."""
    if size > top:
        yield ()
        return
    for count in range(budget // (size - 3) + 1):
        for rest in _larger_faces(size + 1, top, budget - count * (size - 3)):
            yield (count,) + rest


def enumerate_codes(n: int, prime_only: bool = True) -> list:
    """
    All spectra with f_3 + f_4 + ... = n + 2 and 3f_3 + 4f_4 + ... = 4n. The
    counts from 5-gons upward are chosen freely and f_3, f_4 solved for. Prime
    doodles have no region with (n+1)/2 edges or more.
    """
    if n < 3:
        raise CodeError(f"too few crossings: {n}")
    top = n // 2 if prime_only else n - 3
    codes = []
    for larger in _larger_faces(5, top, n - 6):
        f3 = 8 + sum((k + 1) * f for k, f in enumerate(larger))
        f4 = n + 2 - f3 - sum(larger)
        if f4 < 0 or 3 * f3 > 4 * n:
            continue
        if top < 4 and f4:
            continue
        codes.append(DoodleCode(n, (f3, f4) + larger))
    codes.sort(key=lambda code: code.faces + (0,) * (top - 2 - len(code.faces)))
    logger.debug(f"{len(codes)} codes for n={n} (prime_only={prime_only})")
    return codes


def code_of(diagram: DoodleDiagram) -> DoodleCode:
    if not is_minimal(diagram):
        raise CodeError("not minimal")
    sizes = Counter(region.size for region in diagram.face_orbits)
    top = max(sizes, default=3)
    return DoodleCode(diagram.n, tuple(sizes.get(size, 0) for size in range(3, top + 1)))
