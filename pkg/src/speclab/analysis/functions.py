"""Test functions F used in eigenvalue means.

Monomials z^q and polynomials probe moments; radial hat bumps are the
continuous, compactly supported functions used to localize clusters.
Every test function evaluates on complex arrays.
"""

import re
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Monomial:
    q: int

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        return z**self.q if self.q else np.ones_like(z)

    @property
    def label(self):
        return f"z^{self.q}"

    def to_dict(self):
        return {"kind": "monomial", "q": self.q}


@dataclass(frozen=True)
class Polynomial:
    """sum_i coeffs[i] * z**i"""

    coeffs: tuple

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.zeros_like(z)
        for c in reversed(self.coeffs):
            out = out * z + c
        return out

    @property
    def label(self):
        return "poly(" + ",".join(f"{c:g}" for c in self.coeffs) + ")"

    def to_dict(self):
        return {"kind": "polynomial", "coeffs": [[complex(c).real, complex(c).imag] for c in self.coeffs]}


@dataclass(frozen=True)
class HatBump:
    """1 on |z - center| <= inner, 0 beyond outer, linear in the radius between."""

    center: complex
    inner: float
    outer: float

    def __post_init__(self):
        if not 0.0 <= self.inner < self.outer:
            raise ValueError("hat bump needs 0 <= inner < outer")

    def __call__(self, z):
        r = np.abs(np.asarray(z, dtype=np.complex128) - self.center)
        return np.clip((self.outer - r) / (self.outer - self.inner), 0.0, 1.0).astype(np.complex128)

    @property
    def label(self):
        c = complex(self.center)
        center = f"{c.real:g}" if c.imag == 0 else f"{c.real:g}{c.imag:+g}i"
        return f"hat({center},{self.inner:g},{self.outer:g})"

    def to_dict(self):
        c = complex(self.center)
        return {"kind": "hat", "center": [c.real, c.imag], "inner": self.inner, "outer": self.outer}


_MONO = re.compile(r"^z\^(\d+)$")
_CALL = re.compile(r"^(hat|poly)\((.*)\)$")


def parse_test_function(text):
    """Parse ``z^q``, ``1``, ``z``, ``hat(center,inner,outer)`` or ``poly(c0,c1,...)``."""
    s = text.strip().replace(" ", "")
    if s == "1":
        return Monomial(0)
    if s == "z":
        return Monomial(1)
    m = _MONO.match(s)
    if m:
        return Monomial(int(m.group(1)))
    m = _CALL.match(s)
    if m:
        args = [complex(a.replace("i", "j")) for a in m.group(2).split(",") if a]
        if m.group(1) == "hat":
            if len(args) != 3:
                raise ValueError(f"hat needs 3 arguments: {text!r}")
            return HatBump(args[0], args[1].real, args[2].real)
        if not args:
            raise ValueError(f"poly needs coefficients: {text!r}")
        return Polynomial(tuple(args))
    raise ValueError(f"cannot parse test function {text!r}")
