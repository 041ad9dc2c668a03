"""Numerical loop tracing: from sampled loops of monic polynomials to wall words.

A path is a closed polygon in coefficient space; sample k holds
(a_0, ..., a_{d-1}) for x^d + a_{d-1} x^{d-1} + ... + a_0 and the last sample
connects back to the first. Wall crossings are found on the real-root count,
which is an integer and therefore robust, then located by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .compositions import Composition
from .errors import InputError, PreconditionError, ResolutionError, WordError
from .words import Letter, Word, base_ones, is_admissible, reduce

DEFAULT_TOL = 1e-8
BISECT_TOL = 1e-12
# roots whose imaginary part is below this (relative) are counted as real
IMAG_TOL = 1e-7


@dataclass(frozen=True)
class CoefficientPath:
    d: int
    samples: np.ndarray  # shape (n, d), row k = (a_0, ..., a_{d-1})

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 2 or samples.shape[1] != self.d:
            raise InputError(f"samples must be rows of {self.d} coefficients")
        if samples.shape[0] < 3:
            raise InputError("a path needs at least 3 samples")
        if not np.all(np.isfinite(samples)):
            raise InputError("samples must be finite")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return len(self.samples)

    def point(self, segment: int, t: float) -> np.ndarray:
        a = self.samples[segment]
        b = self.samples[(segment + 1) % len(self.samples)]
        return (1.0 - t) * a + t * b

    def reversed(self) -> "CoefficientPath":
        """Same loop, opposite orientation, same base sample."""
        s = self.samples
        return CoefficientPath(self.d, np.vstack([s[:1], s[:0:-1]]))

    def then(self, other: "CoefficientPath") -> "CoefficientPath":
        """Loop concatenation; both loops must start at the same sample."""
        if other.d != self.d or not np.array_equal(self.samples[0], other.samples[0]):
            raise PreconditionError("loops must share their base sample to be concatenated")
        return CoefficientPath(self.d, np.vstack([self.samples, other.samples]))


def monic(coeffs: Sequence[float]) -> np.ndarray:
    """Highest-degree-first coefficients with the leading 1 restored."""
    return np.concatenate(([1.0], np.asarray(coeffs, dtype=float)[::-1]))


def real_roots(coeffs: Sequence[float]) -> np.ndarray:
    roots = np.roots(monic(coeffs))
    if roots.size == 0:
        return np.array([])
    scale = 1.0 + np.max(np.abs(roots))
    return np.sort(roots[np.abs(roots.imag) <= IMAG_TOL * scale].real)


def real_root_count(coeffs: Sequence[float]) -> int:
    return len(real_roots(coeffs))


# ---------------------------------------------------------------- root_pattern


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod(a: list, b: list) -> tuple[list, list]:
    # low-to-high coefficient lists of Fractions
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        factor = a[-1] / b[-1]
        q[shift] = factor
        for k, c in enumerate(b):
            a[shift + k] -= factor * c
    return _trim(q), a


def _gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _divmod(a, b)[1]
    return [c / a[-1] for c in a]


def _deriv(p: list) -> list:
    return [k * c for k, c in enumerate(p)][1:]


def squarefree_factors(coeffs_low_to_high: list) -> list[tuple[list, int]]:
    """Yun's algorithm over Q: pairs (squarefree factor, multiplicity)."""
    p = _trim([Fraction(c) for c in coeffs_low_to_high])
    dp = _deriv(p)
    a = _gcd(p, dp)
    b = _divmod(p, a)[0]
    c = _divmod(dp, a)[0]
    dd = [x - y for x, y in _zip_pad(c, _deriv(b))]
    out = []
    k = 1
    while len(_trim(b)) > 1:
        a = _gcd(b, dd)
        b_next = _divmod(b, a)[0]
        c = _divmod(dd, a)[0]
        if len(a) > 1:
            out.append((a, k))
        b = b_next
        dd = [x - y for x, y in _zip_pad(c, _deriv(b))]
        k += 1
    return out


def _zip_pad(u: list, v: list):
    n = max(len(u), len(v))
    u = list(u) + [Fraction(0)] * (n - len(u))
    v = list(v) + [Fraction(0)] * (n - len(v))
    return zip(u, v)


def _simple_roots(factor: list) -> list[complex]:
    coeffs = [float(c) for c in reversed(factor)]
    return [complex(r) for r in np.roots(coeffs)]


def root_pattern(coeffs: Sequence[float], tol: float = DEFAULT_TOL) -> Composition:
    """Multiplicity pattern of the real roots, in increasing root order.

    Exact multiplicities come from a squarefree decomposition of the (exactly
    represented) float coefficients; roots closer than ``tol * scale`` are then
    merged, with ``scale = 1 + max|root|``.
    """
    if not 0 < tol <= 1e-3:
        raise PreconditionError("tol must lie in (0, 1e-3]")
    coeffs = [float(c) for c in coeffs]
    if not all(math.isfinite(c) for c in coeffs):
        raise InputError("coefficients must be finite")
    poly = coeffs + [1.0]
    roots: list[tuple[complex, int]] = []
    for factor, mult in squarefree_factors(poly):
        roots.extend((r, mult) for r in _simple_roots(factor))
    if not roots:
        return Composition()
    scale = 1.0 + max(abs(r) for r, _ in roots)
    n = len(roots)
    parent = list(range(n))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for a in range(n):
        for b in range(a + 1, n):
            gap = abs(roots[a][0] - roots[b][0]) / scale
            if tol <= gap < 2 * tol:
                raise ResolutionError(
                    f"pattern unresolved at tolerance {tol:g}: two roots are {gap:.3g} (relative) apart"
                )
            if gap < tol:
                parent[find(a)] = find(b)
    clusters: dict[int, list] = {}
    for k in range(n):
        clusters.setdefault(find(k), []).append(roots[k])
    real = []
    for members in clusters.values():
        mult = sum(m for _, m in members)
        center = sum(r * m for r, m in members) / mult
        if abs(center.imag) < tol * scale:
            real.append((center.real, mult))
    real.sort()
    return Composition(m for _, m in real)


# ---------------------------------------------------------------- tracing


@dataclass(frozen=True)
class CrossingEvent:
    segment: int
    t: float
    i: int
    j: int
    sign: int

    @property
    def letter(self) -> Letter:
        return Letter(self.i, self.j, self.sign)


def _locate(path, segment, t0, t1, n0, n1, out, eps) -> None:
    if n0 == n1:
        return
    while t1 - t0 > eps:
        mid = 0.5 * (t0 + t1)
        nm = real_root_count(path.point(segment, mid))
        if nm == n0:
            t0 = mid
        elif nm == n1:
            t1 = mid
        else:
            _locate(path, segment, t0, mid, n0, nm, out, eps)
            _locate(path, segment, mid, t1, nm, n1, out, eps)
            return
    if abs(n1 - n0) != 2:
        raise ResolutionError(
            f"loop not in generic position: real-root count jumps {n0} -> {n1} "
            f"in segment {segment} near t={t0:.12f}; forbidden tangency pattern suspected"
        )
    out.append(_identify(path, segment, t0, t1, n0, n1))


def _identify(path, segment, t0, t1, n0, n1) -> CrossingEvent:
    sign = 1 if n1 > n0 else -1
    rich_t, poor_t = (t1, t0) if sign > 0 else (t0, t1)
    rich = real_roots(path.point(segment, rich_t))
    poor = real_roots(path.point(segment, poor_t))
    gaps = np.diff(rich)
    k = int(np.argmin(gaps))
    scale = 1.0 + max(np.max(np.abs(rich)), np.max(np.abs(poor)) if poor.size else 0.0)
    others = np.delete(rich, [k, k + 1])
    drift = np.max(np.abs(others - poor)) if poor.size else 0.0
    neighbours = [gaps[m] for m in (k - 1, k + 1) if 0 <= m < len(gaps)]
    pinched = gaps[k] < 1e-3 * scale and all(g > 100 * gaps[k] for g in neighbours)
    if not pinched or drift > 1e-3 * scale:
        raise ResolutionError(
            f"crossing in segment {segment} near t={t0:.12f} does not look like a single "
            "double-root wall; forbidden tangency pattern suspected"
        )
    n = len(poor)
    return CrossingEvent(segment, t0, k, n - k, sign)


def crossing_events(path: CoefficientPath, bisect_tol: float = BISECT_TOL) -> list[CrossingEvent]:
    """All wall crossings along the closed loop, in order."""
    if not 0 < bisect_tol < 1e-3:
        raise PreconditionError("bisection tolerance must lie in (0, 1e-3)")
    counts = [real_root_count(s) for s in path.samples]
    if counts[0] != base_ones(path.d):
        raise PreconditionError(
            f"base sample has {counts[0]} real roots; expected {base_ones(path.d)} for d={path.d}"
        )
    events: list[CrossingEvent] = []
    n = len(path)
    for seg in range(n):
        _locate(path, seg, 0.0, 1.0, counts[seg], counts[(seg + 1) % n], events, bisect_tol)
    events.sort(key=lambda e: (e.segment, e.t))
    return events


def trace(path: CoefficientPath, raw: bool = False, bisect_tol: float = BISECT_TOL) -> Word:
    """The admissible word of the loop; freely reduced unless ``raw``."""
    word = Word(e.letter for e in crossing_events(path, bisect_tol))
    return word if raw else reduce(word)


# ---------------------------------------------------------------- synthesis

_SPACING = 1.0
_SPLIT = 0.25  # half-gap of a freshly created real pair
_LIFT = 0.09  # s of a complex pair just before it lands on the real axis


def _canonical_reals(k: int) -> list[float]:
    return [(m - (k - 1) / 2) * _SPACING for m in range(k)]


def _parked(npairs: int) -> list[tuple[float, float]]:
    return [(0.0, 1.0 + m) for m in range(npairs)]


def _coefficients(reals, pairs) -> np.ndarray:
    poly = np.array([1.0])
    for r in reals:
        poly = np.convolve(poly, [1.0, -r])
    for c, s in pairs:
        poly = np.convolve(poly, [1.0, -2.0 * c, c * c + s])
    return poly[1:][::-1]


def _lerp(a, b, t):
    return (1 - t) * a + t * b


def synthesize(word: Sequence[Letter], d: int, samples_per_letter: int = 12) -> CoefficientPath:
    """A loop of polynomials whose crossings spell ``word``.

    Real roots sit at evenly spaced positions between letters; complex pairs are
    factors (x - c)^2 + s with s > 0. A ``+`` letter lowers a complex pair onto
    the gap between the i-th and (i+1)-st real roots; a ``-`` letter lifts the
    i-th and (i+1)-st real roots off the axis.
    """
    word = Word(word)
    if not word.is_reduced():
        raise WordError(f"word is not reduced: {word}")
    if not is_admissible(word, d):
        raise WordError(f"word is not admissible for d={d}: {word}")
    if samples_per_letter < 2:
        raise PreconditionError("samples_per_letter must be >= 2")
    m = samples_per_letter
    reals = _canonical_reals(base_ones(d))
    pairs = _parked((d - len(reals)) // 2)
    samples = [_coefficients(reals, pairs)]

    def move_to(new_reals, new_pairs):
        nonlocal reals, pairs
        for step in range(1, m + 1):
            t = step / m
            rs = [_lerp(a, b, t) for a, b in zip(reals, new_reals)]
            ps = [(_lerp(a[0], b[0], t), _lerp(a[1], b[1], t)) for a, b in zip(pairs, new_pairs)]
            samples.append(_coefficients(rs, ps))
        reals, pairs = list(new_reals), list(new_pairs)

    def sweep(c, s_from, s_to):
        for step in range(1, m + 1):
            s = _lerp(s_from, s_to, step / m)
            samples.append(_coefficients(reals, pairs + [(c, s)]))

    for x in word:
        k = len(reals)
        if x.sign > 0:
            if k == 0:
                c = 0.0
            elif x.i == 0:
                c = reals[0] - _SPACING
            elif x.i == k:
                c = reals[-1] + _SPACING
            else:
                c = 0.5 * (reals[x.i - 1] + reals[x.i])
            # bring the last complex pair above the landing spot
            target = pairs[:-1] + [(c, _LIFT)]
            move_to(reals, target)
            pairs = pairs[:-1]
            sweep(c, _LIFT, -_SPLIT**2)
            reals = sorted(reals + [c - _SPLIT, c + _SPLIT])
            pairs_after = pairs
        else:
            lo, hi = reals[x.i], reals[x.i + 1]
            c, h = 0.5 * (lo + hi), 0.5 * (hi - lo)
            reals = reals[: x.i] + reals[x.i + 2 :]
            sweep(c, -h * h, _LIFT)
            pairs_after = pairs + [(c, _LIFT)]
            pairs = pairs_after
        move_to(_canonical_reals(len(reals)), _parked(len(pairs)))
    while len(samples) < 3:
        # the constant loop
        samples.append(samples[0])
    return CoefficientPath(d, np.array(samples))


def export_zero_locus(path: CoefficientPath, resolution: int = 400) -> list[tuple[float, float]]:
    """Points (psi, x) with psi in [0, 1) running once around the loop and x a
    real root of the polynomial at psi."""
    n = len(path)
    rows = []
    for k in range(resolution):
        psi = k / resolution
        seg, t = divmod(psi * n, 1.0)
        for x in real_roots(path.point(int(seg), t)):
            rows.append((psi, float(x)))
    return rows
