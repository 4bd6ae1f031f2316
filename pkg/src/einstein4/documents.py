"""Input documents: curvature data as JSON.

A document carries either Berger normal-form data

    {"format_version": 1, "berger": {"lambda": 1.0, "a": [..], "b": [..]}}

or raw curvature components in 1-based indices with the K(e_i,e_j) =
R(i,j,i,j) sign convention

    {"format_version": 1,
     "riemann": {"components": [{"indices": [1,2,1,2], "value": 1.0}, ...]}}

plus an optional "tol".  Unspecified components are filled by index symmetry;
assigning the same component twice with values differing beyond tolerance is
an input error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .berger import BergerForm
from .tensor import DEFAULT_TOL, RiemannTensor4

FORMAT_VERSION = 1


class DocumentError(ValueError):
    """Malformed or inconsistent input document."""


@dataclass(frozen=True)
class InputDocument:
    format_version: int
    tol: float
    berger: BergerForm | None = None
    riemann: RiemannTensor4 | None = None

    @property
    def kind(self) -> str:
        return "berger" if self.berger is not None else "riemann"


def _build_tensor(components: list, tol: float) -> RiemannTensor4:
    r = np.zeros((4, 4, 4, 4))
    seen = np.zeros((4, 4, 4, 4), dtype=bool)

    def assign(i, j, k, l, value):
        if seen[i, j, k, l] and abs(r[i, j, k, l] - value) > tol:
            raise DocumentError(
                f"conflicting assignment for R({i+1},{j+1},{k+1},{l+1}): "
                f"{r[i, j, k, l]} vs {value}")
        r[i, j, k, l] = value
        seen[i, j, k, l] = True

    for entry in components:
        if not isinstance(entry, dict) or "indices" not in entry or "value" not in entry:
            raise DocumentError("each component needs 'indices' and 'value'")
        idx = entry["indices"]
        if len(idx) != 4 or any(not isinstance(x, int) or not 1 <= x <= 4 for x in idx):
            raise DocumentError(f"indices must be four integers in 1..4, got {idx}")
        value = float(entry["value"])
        i, j, k, l = (x - 1 for x in idx)
        if (i == j or k == l):
            if abs(value) > tol:
                raise DocumentError(
                    f"component R({i+1},{j+1},{k+1},{l+1}) must vanish by antisymmetry")
            continue
        # fill the full symmetry orbit of the assignment
        for (p, q, s, t), sign in (
            ((i, j, k, l), 1.0), ((j, i, k, l), -1.0),
            ((i, j, l, k), -1.0), ((j, i, l, k), 1.0),
            ((k, l, i, j), 1.0), ((l, k, i, j), -1.0),
            ((k, l, j, i), -1.0), ((l, k, j, i), 1.0),
        ):
            assign(p, q, s, t, sign * value)

    try:
        return RiemannTensor4(r, tol=tol)
    except ValueError as exc:
        raise DocumentError(f"components do not form a curvature tensor: {exc}") from exc


def parse_document(text: str, default_tol: float = DEFAULT_TOL) -> InputDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {version!r}")
    tol = float(data.get("tol", default_tol))
    if tol <= 0:
        raise DocumentError("tol must be positive")
    has_berger = "berger" in data
    has_riemann = "riemann" in data
    if has_berger == has_riemann:
        raise DocumentError("document must contain exactly one of 'berger' or 'riemann'")
    if has_berger:
        section = data["berger"]
        try:
            bf = BergerForm(
                np.asarray(section["a"], dtype=np.float64),
                np.asarray(section["b"], dtype=np.float64),
                float(section.get("lambda", 1.0)),
                tol=tol,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"invalid berger section: {exc}") from exc
        return InputDocument(version, tol, berger=bf)
    section = data["riemann"]
    if not isinstance(section, dict) or "components" not in section:
        raise DocumentError("riemann section needs a 'components' list")
    return InputDocument(version, tol, riemann=_build_tensor(section["components"], tol))


def load_document(path, default_tol: float = DEFAULT_TOL) -> InputDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_document(fh.read(), default_tol=default_tol)


def emit_berger_document(bf: BergerForm, tol: float | None = None) -> str:
    """Canonical single-line JSON for a Berger form; stable field order."""
    payload = {
        "format_version": FORMAT_VERSION,
        "berger": {
            "lambda": float(bf.lam),
            "a": [float(x) for x in bf.a],
            "b": [float(x) for x in bf.b],
        },
    }
    if tol is not None:
        payload["tol"] = float(tol)
    return json.dumps(payload, separators=(", ", ": "))


def emit_document(doc: InputDocument) -> str:
    """Canonical JSON for a parsed document (riemann data is normalized to the
    minimal component list: one entry per nonzero operator-basis pair)."""
    if doc.berger is not None:
        return emit_berger_document(doc.berger, tol=doc.tol)
    from .tensor import PAIR_BASIS  # local import to avoid cycle at module load

    comps = []
    r = doc.riemann.components
    for p, (i, j) in enumerate(PAIR_BASIS):
        for q, (k, l) in enumerate(PAIR_BASIS):
            if q < p:
                continue
            value = r[i, j, k, l]
            if value != 0.0:
                comps.append({"indices": [i + 1, j + 1, k + 1, l + 1],
                              "value": float(value)})
    payload = {
        "format_version": FORMAT_VERSION,
        "riemann": {"components": comps},
        "tol": doc.tol,
    }
    return json.dumps(payload, separators=(", ", ": "))
