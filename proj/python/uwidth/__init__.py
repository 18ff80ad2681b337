"""Width estimates and certificates for metric simplicial complexes."""

import json as _json

from ._uwidth import Complex, UwidthError, from_text, generate, load
from . import _uwidth

__all__ = [
    "Complex",
    "UwidthError",
    "generate",
    "load",
    "from_text",
    "width",
    "transfer",
    "surface",
    "example1",
]


def width(complex, method="sweep", h=0.0, step=0.0, budget=8, eps=0.1, trunc=0.0):
    """Report dict for one of: sweep, separator-search, surface."""
    if method == "sweep":
        text = _uwidth.sweep_width(complex, h, step)
    elif method == "separator-search":
        text = _uwidth.separator_search(complex, h, step, budget)
    elif method == "surface":
        text = _uwidth.surface(complex, eps, trunc, step, budget)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _json.loads(text)


def transfer(complex, trunc=0.0, h=0.0, step=0.0):
    return _json.loads(_uwidth.transfer(complex, trunc, h, step))


def surface(complex, eps=0.1, trunc=0.0, step=0.0, budget=8):
    return _json.loads(_uwidth.surface(complex, eps, trunc, step, budget))


def example1(R=(2,), trunc=0.0, seed=0):
    return _json.loads(_uwidth.example1(list(R), trunc, seed))
