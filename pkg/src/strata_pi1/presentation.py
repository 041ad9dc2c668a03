"""Presentations of the fundamental group of the complement of a closed pattern set.

Generators are the loops gamma(i,j) with i >= 1 (the gamma(0,j) loops are
trivial and are elided from relators). Every codimension-two pattern missing
from Theta contributes one relator: a single 3 gives a two-symbol relator, two
2s give a four-symbol one.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable

from .compositions import (
    Composition,
    ThetaPoset,
    closure,
    double_two,
    enumerate_omega,
    single_three,
    split_eq2,
)
from .errors import PatternError, PreconditionError
from .words import Word, alphabet, concat, gamma

Symbol = tuple  # ((i, j), exponent)
Relator = tuple  # tuple of Symbols


@dataclass(frozen=True)
class Presentation:
    d: int
    generators: tuple
    relators: tuple = ()
    sources: tuple = ()  # one (kind, Composition) per relator
    critical: bool = False  # describes degree d+1 polynomials through their derivatives

    def __post_init__(self):
        gens = set(self.generators)
        for rel in self.relators:
            for g, e in rel:
                if g not in gens:
                    raise PreconditionError(f"relator uses undeclared generator gamma{g}")
                if e not in (1, -1):
                    raise ValueError("relator exponents must be +1 or -1")
        if self.sources and len(self.sources) != len(self.relators):
            raise ValueError("sources must match relators one-to-one")

    def text(self) -> str:
        gens = " ".join(format_generator(g) for g in self.generators)
        rels = "; ".join(format_relator(r) for r in self.relators)
        return f"<{gens}> | <{rels}>"


def format_generator(g) -> str:
    return f"gamma({g[0]},{g[1]})"


def format_relator(rel: Iterable[Symbol]) -> str:
    parts = []
    for g, e in rel:
        parts.append(format_generator(g) + ("" if e == 1 else "^-1"))
    return " ".join(parts) if parts else "1"


def parse_relator(text: str) -> Relator:
    from .errors import InputError
    import re

    out = []
    if text.strip() in ("", "1"):
        return ()
    for token in text.split():
        m = re.fullmatch(r"gamma\((\d+),(\d+)\)(\^-1)?", token)
        if m is None:
            raise InputError(f"bad relator token {token!r}")
        out.append(((int(m[1]), int(m[2])), -1 if m[3] else 1))
    return tuple(out)


def generators(d: int) -> list[tuple[int, int]]:
    """Minimal generating set: all wall indices with i >= 1."""
    if d < 1:
        raise PreconditionError("d must be >= 1")
    return sorted((i, j) for i, j in alphabet(d) if i >= 1)


def _elide(raw: list[Symbol], keep_dummies: bool) -> Relator:
    if keep_dummies:
        return tuple(raw)
    return tuple((g, e) for g, e in raw if g[0] != 0)


def relation_type3(omega, keep_dummies: bool = False) -> Relator:
    """Relator gamma(i,j+1) gamma(i+1,j)^-1 for omega = (1^i, 3, 1^j)."""
    shape = single_three(Composition(omega))
    if shape is None:
        raise PatternError(f"{Composition(omega)} is not of the form (1^i, 3, 1^j)")
    i, j = shape
    return _elide([((i, j + 1), 1), ((i + 1, j), -1)], keep_dummies)


def relation_type22(omega, keep_dummies: bool = False) -> Relator:
    """Relator gamma(i+j,l) gamma(i+j+2,l) gamma(i,j+l+2)^-1 gamma(i,j+l)^-1
    for omega = (1^i, 2, 1^j, 2, 1^l)."""
    shape = double_two(Composition(omega))
    if shape is None:
        raise PatternError(f"{Composition(omega)} is not of the form (1^i, 2, 1^j, 2, 1^l)")
    i, j, l = shape
    raw = [((i + j, l), 1), ((i + j + 2, l), 1), ((i, j + l + 2), -1), ((i, j + l), -1)]
    return _elide(raw, keep_dummies)


def relation_for(omega, keep_dummies: bool = False) -> tuple[str, Relator]:
    omega = Composition(omega)
    if single_three(omega) is not None:
        return "type3", relation_type3(omega, keep_dummies)
    if double_two(omega) is not None:
        return "type22", relation_type22(omega, keep_dummies)
    raise PatternError(f"{omega} is not a codimension-two pattern")


def check_presentable(theta: ThetaPoset) -> None:
    theta.require_closed()
    low = theta.min_reduced_norm()
    if low is not None and low < 2:
        raise PreconditionError(
            "pattern set contains a top cell or a wall (reduced norm <= 1); "
            "only sets inside Omega_{>=2} define the complements treated here"
        )


def presentation(theta: ThetaPoset, keep_dummies: bool = False) -> Presentation:
    check_presentable(theta)
    _, missing = split_eq2(theta)
    gens = generators(theta.d)
    relators, sources = [], []
    if keep_dummies:
        dummies = sorted((i, j) for i, j in alphabet(theta.d) if i == 0)
        gens = sorted(gens + dummies)
        for g in dummies:
            relators.append(((g, 1),))
            sources.append(("dummy", Composition()))
    for omega in missing:
        kind, rel = relation_for(omega, keep_dummies)
        relators.append(rel)
        sources.append((kind, omega))
    return Presentation(theta.d, tuple(gens), tuple(relators), tuple(sources))


def expand_relator(rel: Iterable[Symbol], d: int) -> Word:
    """The freely reduced wall word obtained by substituting the gamma loops."""
    word = Word()
    for (i, j), e in rel:
        loop = gamma(i, j, d)
        word = concat(word, loop if e == 1 else loop.inverse())
    return word


def pi1_compactified(theta: ThetaPoset) -> str:
    """'infinite_cyclic' for Theta = {(d)} (a circle), otherwise 'trivial'."""
    theta.require_closed()
    if theta.members == frozenset({Composition((theta.d,))}):
        return "infinite_cyclic"
    return "trivial"


def classify_freeness(theta: ThetaPoset) -> str:
    """Which freeness criterion applies, checked on the codimension-two slice.

    ``shortcut_ge3``: Theta avoids codimension two, the group is trivial.
    ``case_ii``: the codimension-two members are exactly the single-3 patterns;
    the group is infinite cyclic for d >= 4.
    ``case_i``: Theta holds every (1^i, 2, 1^j, 2, 1^l) with j > 0; the group is free.
    """
    check_presentable(theta)
    inside, _ = split_eq2(theta)
    if not inside:
        return "shortcut_ge3"
    eq2 = enumerate_omega(theta.d, eq=2)
    if set(inside) == {w for w in eq2 if single_three(w) is not None}:
        return "case_ii"
    separated = [w for w in eq2 if (s := double_two(w)) is not None and s[1] > 0]
    if all(w in theta.members for w in separated):
        return "case_i"
    return "unclassified"


def stabilize(theta: ThetaPoset, d_target: int) -> ThetaPoset:
    if d_target < theta.d or (d_target - theta.d) % 2:
        raise PreconditionError(
            f"target degree {d_target} must be >= {theta.d} and of the same parity"
        )
    return closure(theta.members, d_target)


@dataclass(frozen=True)
class Split:
    d_prime: int
    low: Presentation
    high: Presentation


def split_points(theta: ThetaPoset) -> list[int]:
    """Degrees d' < d (same parity) at which Theta holds every codimension-two
    pattern of norm d'. Vacuous levels without such patterns are skipped."""
    check_presentable(theta)
    eq2 = enumerate_omega(theta.d, eq=2)
    out = []
    for dp in range(theta.d - 2, 2, -2):
        level = [w for w in eq2 if w.norm() == dp]
        if level and all(w in theta.members for w in level):
            out.append(dp)
    return sorted(out)


def free_product_split(theta: ThetaPoset, d_prime: int | None = None) -> Split | None:
    """Split the presentation into the part living below norm d' and the part
    above it. The two share no generator, so the group is their free product."""
    points = split_points(theta)
    if not points:
        return None
    if d_prime is None:
        d_prime = points[0]
    elif d_prime not in points:
        raise PreconditionError(f"no free-product split at d'={d_prime}; candidates: {points}")
    full = presentation(theta)
    low_gens = tuple(g for g in full.generators if sum(g) + 2 < d_prime)
    high_gens = tuple(g for g in full.generators if sum(g) + 2 >= d_prime)
    low_rels, low_src, high_rels, high_src = [], [], [], []
    for rel, src in zip(full.relators, full.sources):
        if src[1].norm() < d_prime:
            low_rels.append(rel)
            low_src.append(src)
        else:
            high_rels.append(rel)
            high_src.append(src)
    low = Presentation(d_prime - 2, low_gens, tuple(low_rels), tuple(low_src))
    high = Presentation(theta.d, high_gens, tuple(high_rels), tuple(high_src))
    return Split(d_prime, low, high)


def critical_presentation(theta: ThetaPoset) -> Presentation:
    """Presentation for degree d+1 polynomials whose derivative avoids Theta.

    Differentiation is a trivial fibration with fibre R onto the complement,
    so the group is the same one.
    """
    return replace(presentation(theta), critical=True)
