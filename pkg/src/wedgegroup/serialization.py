"""Canonical JSON forms for the library's value types.

The CLI promises byte-identical output for identical invocations, so floats
are rendered with a fixed 17-significant-digit format and object keys are
emitted in sorted order; the stock json module cannot control float
rendering, hence the small hand-rolled emitter.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .minkowski import FourVector, LorentzElement, PoincareElement
from .wedges import DoubleCone, Wedge

__all__ = [
    "canonical_dumps",
    "four_vector_to_json",
    "four_vector_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "poincare_to_json",
    "poincare_from_json",
    "reflection_to_json",
    "wedge_to_json",
    "wedge_from_json",
    "double_cone_to_json",
    "double_cone_from_json",
    "complex_matrix_to_json",
    "complex_matrix_from_json",
    "complex_vector_to_json",
    "complex_vector_from_json",
]


def _float_repr(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("non-finite float cannot be serialized")
    if x == 0.0:
        x = 0.0  # normalize the sign of zero
    return format(x, ".17g")


def canonical_dumps(obj) -> str:
    """JSON text with sorted keys and fixed-precision floats."""
    pieces = []
    _emit(obj, pieces)
    return "".join(pieces)


def _emit(obj, out):
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_float_repr(float(obj)))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise TypeError("object keys must be strings")
            if i:
                out.append(",")
            out.append(json.dumps(key))
            out.append(":")
            _emit(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    elif isinstance(obj, np.ndarray):
        _emit(obj.tolist(), out)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _real_list(values, expected=None):
    arr = np.asarray(values, dtype=float).ravel()
    if expected is not None and arr.size != expected:
        raise ValueError(f"expected {expected} reals, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("entries must be finite")
    return arr


def four_vector_to_json(v: FourVector):
    return [float(c) for c in v.array]


def four_vector_from_json(data) -> FourVector:
    return FourVector.from_array(_real_list(data, 4))


def matrix_to_json(m: LorentzElement):
    return [float(x) for x in m.m.ravel()]


def matrix_from_json(data, tol=None) -> LorentzElement:
    return LorentzElement(_real_list(data, 16).reshape(4, 4), tol=tol)


def poincare_to_json(g: PoincareElement):
    return {
        "matrix": matrix_to_json(g.lorentz),
        "translation": four_vector_to_json(g.translation),
    }


def poincare_from_json(data, tol=None) -> PoincareElement:
    if not isinstance(data, dict) or "matrix" not in data:
        raise ValueError("expected an object with 'matrix' and 'translation'")
    lam = matrix_from_json(data["matrix"], tol=tol)
    shift = four_vector_from_json(data.get("translation", [0.0, 0.0, 0.0, 0.0]))
    return PoincareElement(lam, shift)


def reflection_to_json(r):
    out = poincare_to_json(r.element)
    out["validated"] = True
    return out


def wedge_to_json(w: Wedge):
    return {
        "l1": four_vector_to_json(w.l1),
        "l2": four_vector_to_json(w.l2),
        "p": four_vector_to_json(w.p),
    }


def wedge_from_json(data, tol=None) -> Wedge:
    if not isinstance(data, dict):
        raise ValueError("expected an object with 'l1', 'l2', 'p'")
    return Wedge(
        four_vector_from_json(data["l1"]),
        four_vector_from_json(data["l2"]),
        four_vector_from_json(data.get("p", [0.0, 0.0, 0.0, 0.0])),
        tol=tol,
    )


def double_cone_to_json(c: DoubleCone):
    return {
        "past": four_vector_to_json(c.apex_past),
        "future": four_vector_to_json(c.apex_future),
    }


def double_cone_from_json(data) -> DoubleCone:
    if not isinstance(data, dict):
        raise ValueError("expected an object with 'past' and 'future'")
    return DoubleCone(
        four_vector_from_json(data["past"]),
        four_vector_from_json(data["future"]),
    )


def complex_matrix_to_json(m):
    arr = np.asarray(m, dtype=complex)
    return [
        [[float(entry.real), float(entry.imag)] for entry in row]
        for row in arr
    ]


def complex_matrix_from_json(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("expected a square matrix of [re, im] pairs")
    if not np.all(np.isfinite(arr)):
        raise ValueError("entries must be finite")
    return arr[..., 0] + 1j * arr[..., 1]


def complex_vector_to_json(v):
    arr = np.asarray(v, dtype=complex).ravel()
    return [[float(x.real), float(x.imag)] for x in arr]


def complex_vector_from_json(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("expected a vector of [re, im] pairs")
    if not np.all(np.isfinite(arr)):
        raise ValueError("entries must be finite")
    return arr[:, 0] + 1j * arr[:, 1]
