"""JSON wire formats for operators, witnesses, certificates, and reports.

Matrices travel as row-major lists of [re, im] pairs so that round-trips
are bit-exact (Python's float repr is shortest-round-trip decimal).
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from opgeo.algebra import AlgebraShape, Element
from opgeo.classify import (
    InvertibilityCertificate,
    PartialIsometryWitness,
    Verdict,
)


class DocumentError(ValueError):
    """The document does not parse into a valid object."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def digest(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()


def _block_to_pairs(b: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in b.ravel()]


def _pairs_to_block(pairs, n: int) -> np.ndarray:
    if len(pairs) != n * n:
        raise DocumentError(f"block for M{n} needs {n * n} entries, got {len(pairs)}")
    flat = []
    for p in pairs:
        if not (isinstance(p, (list, tuple)) and len(p) == 2):
            raise DocumentError("matrix entries must be [re, im] pairs")
        flat.append(complex(float(p[0]), float(p[1])))
    return np.array(flat, dtype=np.complex128).reshape(n, n)


def element_to_doc(x: Element, label: str | None = None, unit_identified: bool | None = None) -> dict:
    doc = {
        "shape": list(x.shape.block_dims),
        "blocks": [_block_to_pairs(b) for b in x.blocks],
    }
    if label is not None:
        doc["label"] = label
    if unit_identified is not None:
        doc["unit_identified"] = bool(unit_identified)
    return doc


def element_from_doc(doc) -> Element:
    if not isinstance(doc, dict):
        raise DocumentError("operator document must be a JSON object")
    try:
        dims = [int(d) for d in doc["shape"]]
        blocks_raw = doc["blocks"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"missing or malformed field: {exc}") from exc
    if not isinstance(blocks_raw, list) or len(blocks_raw) != len(dims):
        raise DocumentError("blocks must be a list matching shape")
    try:
        shape = AlgebraShape(tuple(dims))
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    blocks = [_pairs_to_block(p, n) for p, n in zip(blocks_raw, dims)]
    try:
        return Element(shape, tuple(blocks))
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def load_element(path: str) -> tuple[Element, dict, bytes]:
    """Read an operator document; returns (element, document, raw bytes)."""
    if path == "-":
        import sys

        raw = sys.stdin.buffer.read()
    else:
        with open(path, "rb") as fh:
            raw = fh.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return element_from_doc(doc), doc, raw


def witness_to_doc(w: PartialIsometryWitness) -> dict:
    return {
        "type": "partial-isometry-witness",
        "y": element_to_doc(w.y),
        "b": w.b,
        "norm_plus": w.norm_plus,
        "norm_minus": w.norm_minus,
        "norm_at_b": w.norm_at_b,
        "margin": w.margin,
        "spectral_point": w.spectral_point,
    }


def witness_from_doc(doc) -> PartialIsometryWitness:
    try:
        return PartialIsometryWitness(
            y=element_from_doc(doc["y"]),
            b=float(doc["b"]),
            norm_plus=float(doc["norm_plus"]),
            norm_minus=float(doc["norm_minus"]),
            norm_at_b=float(doc["norm_at_b"]),
            margin=float(doc["margin"]),
            spectral_point=float(doc["spectral_point"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed witness document: {exc}") from exc


def certificate_to_doc(cert: InvertibilityCertificate) -> dict:
    return {
        "type": "invertibility-certificate",
        "u": element_to_doc(cert.u),
        "epsilon": cert.epsilon,
    }


def certificate_from_doc(doc) -> InvertibilityCertificate:
    try:
        return InvertibilityCertificate(
            u=element_from_doc(doc["u"]), epsilon=float(doc["epsilon"])
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed certificate document: {exc}") from exc


def _jsonable_evidence(evidence: dict) -> dict:
    out = {}
    for key, val in evidence.items():
        if isinstance(val, PartialIsometryWitness):
            out[key] = witness_to_doc(val)
        elif isinstance(val, InvertibilityCertificate):
            out[key] = certificate_to_doc(val)
        elif isinstance(val, dict):
            out[key] = _jsonable_evidence(val)
        elif isinstance(val, (np.floating, float)):
            out[key] = float(val)
        elif isinstance(val, (np.integer, int)):
            out[key] = int(val)
        else:
            out[key] = val
    return out


def verdict_to_doc(v: Verdict) -> dict:
    return {
        "predicate": v.predicate,
        "status": "classified",
        "algebraic": v.algebraic,
        "geometric": v.geometric,
        "agreement": v.agreement,
        "evidence": _jsonable_evidence(v.evidence),
        "tolerances": v.tolerances,
    }


def not_applicable_doc(predicate: str, reason: str) -> dict:
    return {"predicate": predicate, "status": "not-applicable", "reason": reason}
