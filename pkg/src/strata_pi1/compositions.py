"""Compositions (real root multiplicity patterns) and closed pattern posets.

A composition lists the multiplicities of the real roots of a polynomial in
increasing order of the roots. Two degenerations act on compositions: a merge
collides two adjacent roots, an insert turns a complex-conjugate pair into a
real double root. ``lower`` precedes ``upper`` when ``lower`` is reachable from
``upper`` by a sequence of these moves.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .errors import ClosednessError, CompositionError


class Composition(tuple):
    """An immutable sequence of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Composition":
        parts = tuple(parts)
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int) or p < 1:
                raise CompositionError(f"composition parts must be positive integers, got {parts!r}")
        return super().__new__(cls, parts)

    @classmethod
    def ones(cls, k: int) -> "Composition":
        return cls((1,) * k)

    @classmethod
    def wall(cls, i: int, j: int) -> "Composition":
        """The codimension-one pattern (1^i, 2, 1^j)."""
        return cls((1,) * i + (2,) + (1,) * j)

    def norm(self) -> int:
        return sum(self)

    def length(self) -> int:
        return len(self)

    def reduced_norm(self) -> int:
        return sum(self) - len(self)

    def merge(self, j: int) -> "Composition":
        """Sum parts j and j+1 (1-based). Identity for j >= length."""
        if j < 1:
            raise ValueError("merge index must be >= 1")
        if j >= len(self):
            return self
        return _raw(self[: j - 1] + (self[j - 1] + self[j],) + self[j + 1 :])

    def insert(self, j: int) -> "Composition":
        """Insert a part 2 at position j (1-based). Identity for j > length + 1."""
        if j < 1:
            raise ValueError("insert index must be >= 1")
        if j > len(self) + 1:
            return self
        return _raw(self[: j - 1] + (2,) + self[j - 1 :])

    def descendants(self) -> frozenset["Composition"]:
        """All compositions one effective merge or insert below this one."""
        return _descendants(self)

    def in_omega(self, d: int) -> bool:
        n = self.norm()
        return n <= d and (d - n) % 2 == 0

    def __repr__(self) -> str:
        return f"Composition({tuple(self)!r})"

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self)) + ")"


def _raw(parts: tuple) -> Composition:
    # parts already known to be valid
    return tuple.__new__(Composition, parts)


@lru_cache(maxsize=None)
def _descendants(omega: Composition) -> frozenset:
    out = {omega.merge(j) for j in range(1, len(omega))}
    out.update(omega.insert(j) for j in range(1, len(omega) + 2))
    return frozenset(out)


def sort_key(omega: Composition) -> tuple:
    return (omega.norm(), tuple(omega))


def canonical(items: Iterable[Composition]) -> list[Composition]:
    """Sort by norm, then lexicographically."""
    return sorted(items, key=sort_key)


def merge(omega: Iterable[int], j: int) -> Composition:
    return Composition(omega).merge(j)


def insert(omega: Iterable[int], j: int) -> Composition:
    return Composition(omega).insert(j)


def precedes(lower: Iterable[int], upper: Iterable[int]) -> bool:
    """True iff ``lower`` is reachable from ``upper`` by merges and inserts.

    Merges keep the norm and inserts raise it by two, so the search never needs
    to visit compositions heavier than ``lower``.
    """
    lower, upper = Composition(lower), Composition(upper)
    target = lower.norm()
    if upper.norm() > target or (target - upper.norm()) % 2:
        return False
    seen = {upper}
    queue = deque([upper])
    while queue:
        omega = queue.popleft()
        if omega == lower:
            return True
        for nxt in omega.descendants():
            if nxt not in seen and nxt.norm() <= target and nxt.reduced_norm() <= lower.reduced_norm():
                seen.add(nxt)
                queue.append(nxt)
    return False


def compositions_of(n: int) -> Iterator[Composition]:
    """All compositions of n, in lexicographic order."""
    if n == 0:
        yield Composition()
        return
    for first in range(1, n + 1):
        for rest in compositions_of(n - first):
            yield _raw((first,) + rest)


def compositions_with_length(n: int, length: int) -> Iterator[Composition]:
    """Compositions of n with exactly ``length`` parts, from cut positions."""
    if length == 0:
        if n == 0:
            yield Composition()
        return
    for cuts in combinations(range(1, n), length - 1):
        bounds = (0,) + cuts + (n,)
        yield _raw(tuple(b - a for a, b in zip(bounds, bounds[1:])))


def enumerate_omega(d: int, eq: int | None = None, ge: int | None = None) -> list[Composition]:
    """Omega_<d], optionally filtered by reduced norm ``== eq`` or ``>= ge``.

    Output is in canonical order (norm, then lexicographic).
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    out = []
    for n in range(d % 2, d + 1, 2):
        # reduced norm k means length n - k
        if eq is not None:
            lengths = [n - eq] if 0 <= n - eq <= n else []
        else:
            lengths = range(0, n - (ge or 0) + 1)
        for length in lengths:
            if length == 0 and n > 0:
                continue
            out.extend(compositions_with_length(n, length))
    return canonical(out)


@dataclass(frozen=True)
class ThetaPoset:
    """A degree together with a finite set of forbidden patterns in Omega_<d]."""

    d: int
    members: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.d < 1:
            raise CompositionError(f"degree must be positive, got {self.d}")
        members = frozenset(m if type(m) is Composition else Composition(m) for m in self.members)
        for omega in members:
            if not omega.in_omega(self.d):
                raise CompositionError(
                    f"{omega} is not in Omega_<{self.d}]: need norm <= {self.d} and norm = {self.d} mod 2"
                )
        object.__setattr__(self, "members", members)

    def __contains__(self, omega) -> bool:
        return Composition(omega) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[Composition]:
        return canonical(self.members)

    def closed(self) -> bool:
        # one-step descendants suffice: every intermediate of a chain ending
        # in Omega_<d] is itself in Omega_<d]
        return not self._missing

    @cached_property
    def _missing(self) -> tuple:
        out = set()
        for omega in self.members:
            for nxt in omega.descendants():
                if nxt.norm() <= self.d and nxt not in self.members:
                    out.add(nxt)
        return tuple(canonical(out))

    def require_closed(self) -> None:
        if not self.closed():
            missing = self.missing_descendants()
            shown = ", ".join(str(m) for m in missing[:5])
            raise ClosednessError(f"pattern set is not closed; missing e.g. {shown}")

    def missing_descendants(self) -> list[Composition]:
        return list(self._missing)

    def min_reduced_norm(self) -> int | None:
        return min((m.reduced_norm() for m in self.members), default=None)


def closure(seed: Iterable, d: int) -> ThetaPoset:
    """The smallest closed poset in Omega_<d] containing ``seed``."""
    start = ThetaPoset(d, frozenset(Composition(s) for s in seed))
    members = set(start.members)
    queue = deque(members)
    while queue:
        omega = queue.popleft()
        for nxt in omega.descendants():
            if nxt.norm() <= d and nxt not in members:
                members.add(nxt)
                queue.append(nxt)
    return ThetaPoset(d, frozenset(members))


def split_eq2(theta: ThetaPoset) -> tuple[list[Composition], list[Composition]]:
    """Partition the codimension-two patterns into members and non-members."""
    theta.require_closed()
    eq2 = enumerate_omega(theta.d, eq=2)
    inside = [w for w in eq2 if w in theta.members]
    outside = [w for w in eq2 if w not in theta.members]
    return inside, outside


def single_three(omega: Composition) -> tuple[int, int] | None:
    """(i, j) if omega = (1^i, 3, 1^j), else None."""
    if omega.count(3) == 1 and all(p in (1, 3) for p in omega):
        i = omega.index(3)
        return i, len(omega) - i - 1
    return None


def double_two(omega: Composition) -> tuple[int, int, int] | None:
    """(i, j, l) if omega = (1^i, 2, 1^j, 2, 1^l), else None."""
    if omega.count(2) == 2 and all(p in (1, 2) for p in omega):
        first = omega.index(2)
        second = omega.index(2, first + 1)
        return first, second - first - 1, len(omega) - second - 1
    return None
