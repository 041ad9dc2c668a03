"""Named pattern sets used throughout the tests and the CLI."""

from __future__ import annotations

from .compositions import Composition, ThetaPoset, closure, enumerate_omega
from .errors import PreconditionError

# codimension-two seeds whose complement in degree 6 has a Z/2 factor
EXTORSION_SEEDS = (
    (3, 1),
    (1, 3),
    (1, 3, 1, 1),
    (1, 1, 3, 1),
    (2, 2, 1, 1),
    (1, 2, 2, 1),
    (1, 1, 2, 2),
    (2, 1, 1, 2),
)


def omega_ge(d: int, k: int) -> ThetaPoset:
    return ThetaPoset(d, frozenset(enumerate_omega(d, ge=k)))


def single_three_only(d: int) -> ThetaPoset:
    """All patterns with a root of multiplicity >= 3."""
    return ThetaPoset(d, frozenset(w for w in enumerate_omega(d) if w and max(w) >= 3))


def extorsion(d: int = 6) -> ThetaPoset:
    if d < 6 or d % 2:
        raise PreconditionError("the extorsion seeds need an even degree >= 6")
    return closure(EXTORSION_SEEDS, d)


def extorsion_split(d: int = 10) -> ThetaPoset:
    """Extorsion seeds plus every codimension-two pattern of norm 8."""
    if d < 10 or d % 2:
        raise PreconditionError("the split example needs an even degree >= 10")
    eight = [w for w in enumerate_omega(d, eq=2) if w.norm() == 8]
    return closure(list(EXTORSION_SEEDS) + eight, d)


def point_only(d: int) -> ThetaPoset:
    """Theta = {(d)}: polynomials of the form (x - a)^d."""
    return ThetaPoset(d, frozenset({Composition((d,))}))


PRESETS = {
    "omega-ge2": lambda d: omega_ge(d, 2),
    "omega-ge3": lambda d: omega_ge(d, 3),
    "single-3-only": single_three_only,
    "extorsion": extorsion,
    "extorsion-split": extorsion_split,
    "point": point_only,
}


def preset(name: str, d: int) -> ThetaPoset:
    try:
        factory = PRESETS[name]
    except KeyError:
        raise PreconditionError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return factory(d)
