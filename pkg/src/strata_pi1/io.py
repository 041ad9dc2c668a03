"""JSON interchange for pattern sets, presentations and coefficient paths."""

from __future__ import annotations

import json
import sys
from pathlib import Path

from .compositions import Composition, ThetaPoset, closure
from .errors import InputError
from .presentation import Presentation
from .simplify import AbelianInvariants, SimplifiedPresentation, certify_free
from .tracer import CoefficientPath

THETA_MODES = ("closure", "verify-closed")


def read_json(path: str | Path):
    try:
        text = sys.stdin.read() if str(path) == "-" else Path(path).read_text()
        return json.loads(text)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def dumps(obj) -> str:
    """One top-level key per line, values compact."""
    if not isinstance(obj, dict) or not obj:
        return json.dumps(obj) + "\n"
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in obj.items())
    return "{\n" + body + "\n}\n"


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{what} must be an integer, got {value!r}")
    return value


def theta_from_json(data) -> ThetaPoset:
    """Build Theta from {"d", "compositions", "mode"}.

    ``mode`` defaults to "verify-closed", so an unclosed file is rejected
    rather than silently enlarged.
    """
    if not isinstance(data, dict) or "d" not in data or "compositions" not in data:
        raise InputError('theta file needs keys "d" and "compositions"')
    d = _int(data["d"], "d")
    if d < 1:
        raise InputError("d must be positive")
    mode = data.get("mode", "verify-closed")
    if mode not in THETA_MODES:
        raise InputError(f"mode must be one of {THETA_MODES}, got {mode!r}")
    comps = data["compositions"]
    if not isinstance(comps, list):
        raise InputError('"compositions" must be a list')
    seed = []
    for c in comps:
        if not isinstance(c, list):
            raise InputError(f"composition must be a list of integers, got {c!r}")
        parts = [_int(p, "part") for p in c]
        if any(p < 1 for p in parts):
            raise InputError(f"composition parts must be positive, got {c!r}")
        seed.append(Composition(parts))
    if mode == "closure":
        return closure(seed, d)
    theta = ThetaPoset(d, frozenset(seed))
    theta.require_closed()
    return theta


def theta_to_json(theta: ThetaPoset) -> dict:
    return {
        "d": theta.d,
        "compositions": [list(c) for c in theta.sorted_members()],
        "mode": "verify-closed",
    }


def _relator_json(rel) -> list:
    return [[g[0], g[1], e] for g, e in rel]


def _relator_from_json(rel, what: str) -> tuple:
    out = []
    if not isinstance(rel, list):
        raise InputError(f"{what} must be a list of [i, j, exponent] triples")
    for sym in rel:
        if not (isinstance(sym, list) and len(sym) == 3):
            raise InputError(f"{what} must be a list of [i, j, exponent] triples")
        i, j, e = (_int(x, what) for x in sym)
        out.append(((i, j), e))
    return tuple(out)


def presentation_to_json(pres: Presentation) -> dict:
    from .presentation import format_relator

    return {
        "d": pres.d,
        "critical": pres.critical,
        "generators": [list(g) for g in pres.generators],
        "relators": [_relator_json(r) for r in pres.relators],
        "provenance": [{"kind": kind, "composition": list(omega)} for kind, omega in pres.sources],
        "text": [format_relator(r) for r in pres.relators],
    }


def presentation_from_json(data) -> Presentation:
    if not isinstance(data, dict) or not {"d", "generators", "relators"} <= data.keys():
        raise InputError('presentation file needs keys "d", "generators" and "relators"')
    gens = []
    for g in data["generators"]:
        if not (isinstance(g, list) and len(g) == 2):
            raise InputError(f"generator must be [i, j], got {g!r}")
        gens.append((_int(g[0], "generator"), _int(g[1], "generator")))
    rels = tuple(_relator_from_json(r, "relator") for r in data["relators"])
    try:
        sources = tuple(
            (p["kind"], Composition(p["composition"])) for p in data.get("provenance", [])
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad provenance entry: {exc}") from None
    try:
        return Presentation(
            _int(data["d"], "d"), tuple(gens), rels, sources, bool(data.get("critical", False))
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _log_json(move: dict) -> dict:
    out = {}
    for key, value in move.items():
        out[key] = list(value) if isinstance(value, tuple) else value
    return out


def simplified_to_json(simplified: SimplifiedPresentation, invariants: AbelianInvariants) -> dict:
    return {
        "generators": [list(g) for g in simplified.generators],
        "relators": [_relator_json(r) for r in simplified.relators],
        "free_rank": invariants.free_rank,
        "torsion": list(invariants.torsion),
        "free_certified": certify_free(simplified) is not None,
        "log": [_log_json(m) for m in simplified.log],
    }


def path_from_json(data) -> CoefficientPath:
    if not isinstance(data, dict) or "d" not in data or "samples" not in data:
        raise InputError('path file needs keys "d" and "samples"')
    d = _int(data["d"], "d")
    samples = data["samples"]
    if not isinstance(samples, list) or not all(isinstance(s, list) for s in samples):
        raise InputError('"samples" must be a list of coefficient lists')
    try:
        return CoefficientPath(d, samples)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad samples: {exc}") from None


def path_to_json(path: CoefficientPath) -> dict:
    return {"d": path.d, "samples": [[float(x) for x in row] for row in path.samples]}
