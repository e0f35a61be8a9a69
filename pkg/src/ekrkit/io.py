"""JSON documents for families and pair systems (1-indexed elements).

Family document::

    {"n": 6, "k": 2, "t": 1, "sets": [[1], [1, 2], ...]}

Pair-system document::

    {"n": 4, "t": 0, "pairs": [{"A": [1, 2], "B": [3, 4]}, ...]}

Rationals are written as ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from ekrkit.bollobas import PairSystem
from ekrkit.compression import SetFamily
from ekrkit.sets import GroundParams, elements_of


class DocumentError(ValueError):
    """A JSON document is malformed or describes an invalid object."""


def rational_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den or 1))


def _read(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _int_field(doc: dict, name: str, where: str, default: int | None = None) -> int:
    if name not in doc:
        if default is not None:
            return default
        raise DocumentError(f"{where}: missing field '{name}'")
    value = doc[name]
    if not isinstance(value, int) or isinstance(value, bool):
        raise DocumentError(f"{where}: field '{name}' must be an integer, got {value!r}")
    return value


def _element_list(value: Any, n: int, where: str) -> int:
    if not isinstance(value, list):
        raise DocumentError(f"{where}: expected a list of elements, got {value!r}")
    mask = 0
    for e in value:
        if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= n:
            raise DocumentError(f"{where}: element {e!r} is not in 1..{n}")
        if mask >> (e - 1) & 1:
            raise DocumentError(f"{where}: element {e} repeated")
        mask |= 1 << (e - 1)
    return mask


def family_from_doc(doc: Any, where: str = "family") -> SetFamily:
    if not isinstance(doc, dict):
        raise DocumentError(f"{where}: top level must be an object")
    n = _int_field(doc, "n", where)
    k = _int_field(doc, "k", where)
    t = _int_field(doc, "t", where, default=0)
    try:
        params = GroundParams(n, k, t)
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from exc
    sets = doc.get("sets")
    if not isinstance(sets, list):
        raise DocumentError(f"{where}: field 'sets' must be a list of element lists")
    masks = []
    seen: dict[int, int] = {}
    for idx, s in enumerate(sets):
        m = _element_list(s, n, f"{where}: sets[{idx}]")
        if m in seen:
            raise DocumentError(f"{where}: sets[{idx}] duplicates sets[{seen[m]}] ({elements_of(m)})")
        if m.bit_count() > k:
            raise DocumentError(f"{where}: sets[{idx}] has {m.bit_count()} elements, above rank bound k={k}")
        seen[m] = idx
        masks.append(m)
    return SetFamily(params, tuple(masks))


def family_to_doc(family: SetFamily) -> dict:
    return {"n": family.n, "k": family.k, "t": family.params.t, "sets": family.as_lists()}


def system_from_doc(doc: Any, where: str = "system") -> PairSystem:
    if not isinstance(doc, dict):
        raise DocumentError(f"{where}: top level must be an object")
    n = _int_field(doc, "n", where)
    t = _int_field(doc, "t", where)
    if not 1 <= n <= 64:
        raise DocumentError(f"{where}: n must be in 1..64, got {n}")
    if t < 0:
        raise DocumentError(f"{where}: t must be nonnegative, got {t}")
    pairs = doc.get("pairs")
    if not isinstance(pairs, list):
        raise DocumentError(f"{where}: field 'pairs' must be a list of {{'A': [...], 'B': [...]}}")
    out = []
    for idx, p in enumerate(pairs):
        if not isinstance(p, dict) or "A" not in p or "B" not in p:
            raise DocumentError(f"{where}: pairs[{idx}] must be an object with 'A' and 'B'")
        a = _element_list(p["A"], n, f"{where}: pairs[{idx}].A")
        b = _element_list(p["B"], n, f"{where}: pairs[{idx}].B")
        out.append((a, b))
    return PairSystem(n, t, tuple(out))


def system_to_doc(system: PairSystem) -> dict:
    return {
        "n": system.n,
        "t": system.t,
        "pairs": [{"A": a, "B": b} for a, b in system.as_lists()],
    }


def load_family(path: str | Path) -> SetFamily:
    return family_from_doc(_read(path), str(path))


def load_system(path: str | Path) -> PairSystem:
    return system_from_doc(_read(path), str(path))


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
