"""Tietze simplification, freeness certificates and abelianization.

The move loop only performs the eliminations that the relators produced here
need: a one-symbol relator kills its generator, a two-symbol relator on two
distinct generators identifies the larger one with the smaller one (or its
inverse). Square relators g^2 are kept so torsion survives.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

Symbol = tuple
Relator = tuple


def free_reduce(rel: Iterable[Symbol]) -> Relator:
    out: list = []
    for g, e in rel:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def cyclic_reduce(rel: Iterable[Symbol]) -> Relator:
    rel = list(free_reduce(rel))
    while len(rel) >= 2 and rel[0][0] == rel[-1][0] and rel[0][1] == -rel[-1][1]:
        rel = rel[1:-1]
    return tuple(rel)


def invert(rel: Sequence[Symbol]) -> Relator:
    return tuple((g, -e) for g, e in reversed(rel))


def _symbol_key(sym):
    return (sym[0], 0 if sym[1] > 0 else 1)


def canonical_relator(rel: Iterable[Symbol]) -> Relator:
    """Cyclically reduced form, minimal over rotations of the relator and its inverse."""
    rel = cyclic_reduce(rel)
    if not rel:
        return ()
    candidates = []
    for r in (rel, invert(rel)):
        for k in range(len(r)):
            candidates.append(r[k:] + r[:k])
    return min(candidates, key=lambda r: tuple(_symbol_key(s) for s in r))


def _relator_key(rel):
    return (len(rel), tuple(_symbol_key(s) for s in rel))


def normalize(relators: Iterable[Relator]) -> tuple[tuple, int, int]:
    """Canonical, deduplicated, sorted relators plus the counts of dropped
    trivial and duplicate relators."""
    trivial = 0
    seen = set()
    for rel in relators:
        c = canonical_relator(rel)
        if not c:
            trivial += 1
            continue
        seen.add(c)
    out = tuple(sorted(seen, key=_relator_key))
    kept = sum(1 for r in relators if canonical_relator(r))
    return out, trivial, kept - len(out)


def substitute(relators: Iterable[Relator], generator, replacement: Relator) -> list:
    """Replace every occurrence of ``generator`` by ``replacement`` (inverted for
    negative exponents)."""
    inv = invert(replacement)
    out = []
    for rel in relators:
        new = []
        for g, e in rel:
            if g == generator:
                new.extend(replacement if e > 0 else inv)
            else:
                new.append((g, e))
        out.append(tuple(new))
    return out


@dataclass(frozen=True)
class SimplifiedPresentation:
    generators: tuple
    relators: tuple
    log: tuple = ()

    def canonical(self) -> tuple:
        return (self.generators, self.relators)


def _next_move(generators, relators):
    singles = [r[0][0] for r in relators if len(r) == 1]
    if singles:
        return {"move": "eliminate", "generator": min(singles)}
    pairs = []
    for r in relators:
        if len(r) == 2 and r[0][0] != r[1][0]:
            (g1, e1), (g2, e2) = r
            keep, drop = min(g1, g2), max(g1, g2)
            e_keep, e_drop = (e1, e2) if keep == g1 else (e2, e1)
            # keep^a drop^b = 1  =>  drop = keep^(-a*b)
            pairs.append((drop, keep, -e_keep * e_drop))
    if pairs:
        drop, keep, sign = min(pairs)
        return {"move": "identify", "generator": drop, "target": keep, "sign": sign}
    return None


def _apply(move, generators, relators):
    g = move["generator"]
    if move["move"] == "eliminate":
        replacement = ()
    else:
        replacement = ((move["target"], move["sign"]),)
    generators = tuple(x for x in generators if x != g)
    return generators, substitute(relators, g, replacement)


def _record_drops(log, trivial, duplicate):
    if trivial:
        log.append({"move": "drop_trivial_relator", "count": trivial})
    if duplicate:
        log.append({"move": "drop_duplicate_relator", "count": duplicate})


def simplify(pres) -> SimplifiedPresentation:
    """Run the move loop to its fixpoint. Deterministic: eliminations go to the
    smallest generator first, identifications remove the larger generator."""
    generators = tuple(sorted(pres.generators))
    log: list = []
    relators, trivial, dup = normalize(pres.relators)
    _record_drops(log, trivial, dup)
    while (move := _next_move(generators, relators)) is not None:
        log.append(move)
        generators, rels = _apply(move, generators, relators)
        relators, trivial, dup = normalize(rels)
        _record_drops(log, trivial, dup)
    return SimplifiedPresentation(generators, relators, tuple(log))


def replay(pres, log: Iterable[dict]) -> SimplifiedPresentation:
    """Re-apply the substitution moves of ``log``; drop entries are recomputed."""
    generators = tuple(sorted(pres.generators))
    new_log: list = []
    relators, trivial, dup = normalize(pres.relators)
    _record_drops(new_log, trivial, dup)
    for move in log:
        if move["move"] not in ("eliminate", "identify"):
            continue
        new_log.append(dict(move))
        generators, rels = _apply(move, generators, relators)
        relators, trivial, dup = normalize(rels)
        _record_drops(new_log, trivial, dup)
    return SimplifiedPresentation(generators, relators, tuple(new_log))


def certify_free(simplified: SimplifiedPresentation) -> int | None:
    """Free rank if no relator survived, else None (no claim either way)."""
    if simplified.relators:
        return None
    return len(simplified.generators)


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple = ()


def relation_matrix(pres) -> list[list[int]]:
    index = {g: k for k, g in enumerate(sorted(pres.generators))}
    rows = []
    for rel in pres.relators:
        row = [0] * len(index)
        for g, e in rel:
            row[index[g]] += e
        rows.append(row)
    return rows


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form, length min(rows, cols).

    Entries are nonnegative and each divides the next (zeros trail).
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not nonzero:
                return diag + [0] * (min(m, n) - t)
            _, pi, pj = min(nonzero)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
    return diag


def abelianize(pres) -> AbelianInvariants:
    rows = relation_matrix(pres)
    ngens = len(pres.generators)
    diag = smith_normal_form(rows) if rows and ngens else []
    rank = sum(1 for x in diag if x)
    return AbelianInvariants(ngens - rank, tuple(x for x in diag if x > 1))


def determinantal_divisors_oracle(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Smith diagonal via gcds of k-by-k minors. Exponential; for tests only."""
    from itertools import combinations

    def det(rows):
        # fraction-free Bareiss elimination
        a = [list(r) for r in rows]
        k = len(a)
        sign, prev = 1, 1
        for c in range(k):
            piv = next((r for r in range(c, k) if a[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                sign = -sign
            for r in range(c + 1, k):
                for cc in range(c + 1, k):
                    a[r][cc] = (a[r][cc] * a[c][c] - a[r][c] * a[c][cc]) // prev
            prev = a[c][c]
        return sign * a[k - 1][k - 1]

    m = len(matrix)
    n = len(matrix[0]) if m else 0
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, det([[matrix[r][c] for c in cs] for r in rs]))
        divisors.append(g)
    out = []
    for k in range(1, len(divisors)):
        out.append(divisors[k] // divisors[k - 1] if divisors[k - 1] else 0)
    return out
