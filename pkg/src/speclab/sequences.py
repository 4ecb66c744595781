"""Coefficient sequences and the finite matrices they generate.

Indexing follows the Jacobi convention used throughout the package: a
sequence supplies a_j (j >= 1, subdiagonal), b_j (j >= 0, diagonal) and c_j
(j >= 1, superdiagonal). The n x n section has b_0..b_{n-1} on the diagonal,
a_1..a_{n-1} below it and c_1..c_{n-1} above it.

A k-periodic background is given by two vectors ``a = (a_0, ..., a_{k-1})``
and ``b = (b_0, ..., b_{k-1})`` with a_j = a[j mod k]; in particular the
first subdiagonal entry of a section is a[1 mod k] while a[0] is the entry
that couples consecutive k x k blocks.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from speclab.errors import Unbounded
from speclab.numkernel import TridiagonalMatrix

BOUND_GUARD = 1e6


# -- coefficient rules --------------------------------------------------------


def _complex_repr(z):
    z = complex(z)
    return [z.real, z.imag]


def _complex_from(value):
    if isinstance(value, (list, tuple)):
        return complex(value[0], value[1])
    return complex(value)


@dataclass(frozen=True)
class Zero:
    kind = "zero"

    def __call__(self, j):
        return np.zeros(np.shape(j), dtype=np.complex128)

    def to_dict(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class PowerDecay:
    """amplitude / (j + shift) ** power"""

    amplitude: complex
    power: float
    shift: float = 1.0
    kind = "power"

    def __call__(self, j):
        j = np.asarray(j, dtype=np.float64)
        return complex(self.amplitude) / (j + self.shift) ** self.power

    def to_dict(self):
        return {
            "kind": self.kind,
            "amplitude": _complex_repr(self.amplitude),
            "power": self.power,
            "shift": self.shift,
        }


@dataclass(frozen=True)
class Geometric:
    """amplitude * ratio ** j"""

    amplitude: complex
    ratio: float
    kind = "geometric"

    def __call__(self, j):
        j = np.asarray(j, dtype=np.float64)
        return complex(self.amplitude) * float(self.ratio) ** j

    def to_dict(self):
        return {"kind": self.kind, "amplitude": _complex_repr(self.amplitude), "ratio": self.ratio}


@dataclass(frozen=True)
class Periodic:
    """values[j mod len(values)]"""

    values: tuple
    kind = "periodic"

    def __call__(self, j):
        vals = np.asarray(self.values, dtype=np.complex128)
        return vals[np.asarray(j) % vals.size]

    def to_dict(self):
        return {"kind": self.kind, "values": [_complex_repr(v) for v in self.values]}


@dataclass(frozen=True)
class FiniteList:
    """values[j - start] inside the listed window, zero elsewhere."""

    values: tuple
    start: int = 0
    kind = "finite"

    def __call__(self, j):
        j = np.asarray(j)
        vals = np.asarray(self.values, dtype=np.complex128)
        out = np.zeros(j.shape, dtype=np.complex128)
        pos = j - self.start
        inside = (pos >= 0) & (pos < vals.size)
        out[inside] = vals[pos[inside]]
        return out

    def to_dict(self):
        return {
            "kind": self.kind,
            "values": [_complex_repr(v) for v in self.values],
            "start": self.start,
        }


def rule_from_dict(data):
    kind = data.get("kind", "zero")
    if kind == "zero":
        return Zero()
    if kind == "power":
        return PowerDecay(_complex_from(data["amplitude"]), float(data["power"]), float(data.get("shift", 1.0)))
    if kind == "geometric":
        return Geometric(_complex_from(data["amplitude"]), float(data["ratio"]))
    if kind == "periodic":
        return Periodic(tuple(_complex_from(v) for v in data["values"]))
    if kind == "finite":
        return FiniteList(tuple(_complex_from(v) for v in data["values"]), int(data.get("start", 0)))
    raise ValueError(f"unknown rule kind {kind!r}")


# -- sequences ----------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicBackground:
    a: tuple
    b: tuple

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        b = tuple(float(x) for x in self.b)
        if len(a) != len(b) or not a:
            raise ValueError("a and b must be nonempty and of equal length")
        if min(a) <= 0.0:
            raise ValueError("background a entries must be strictly positive")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def k(self):
        return len(self.a)

    def to_dict(self):
        return {"k": self.k, "a": list(self.a), "b": list(self.b)}


FREE_BACKGROUND = PeriodicBackground((1.0,), (0.0,))


@dataclass(frozen=True)
class CoefficientSequence:
    """Periodic real background plus a complex perturbation.

    The realized coefficients are a_j = a_j^0 + da(j), b_j = b_j^0 + db(j),
    c_j = a_j^0 + dc(j).
    """

    background: PeriodicBackground = FREE_BACKGROUND
    da: object = field(default_factory=Zero)
    db: object = field(default_factory=Zero)
    dc: object = field(default_factory=Zero)
    description: str = ""
    bound: float = BOUND_GUARD

    def background_coefficients(self, n):
        """(a_1..a_{n-1}, b_0..b_{n-1}) of the background."""
        av = np.asarray(self.background.a)
        bv = np.asarray(self.background.b)
        k = self.background.k
        return av[np.arange(1, n) % k], bv[np.arange(n) % k]

    def perturbation_coefficients(self, n):
        """(da_1..da_{n-1}, db_0..db_{n-1}, dc_1..dc_{n-1})."""
        off = np.arange(1, n)
        return (
            np.broadcast_to(self.da(off), off.shape).astype(np.complex128),
            np.broadcast_to(self.db(np.arange(n)), (n,)).astype(np.complex128),
            np.broadcast_to(self.dc(off), off.shape).astype(np.complex128),
        )

    def to_dict(self):
        return {
            "description": self.description,
            "background": self.background.to_dict(),
            "da": self.da.to_dict(),
            "db": self.db.to_dict(),
            "dc": self.dc.to_dict(),
            "bound": self.bound,
        }

    @classmethod
    def from_dict(cls, data):
        bg = data.get("background", {"a": [1.0], "b": [0.0]})
        return cls(
            PeriodicBackground(tuple(bg["a"]), tuple(bg["b"])),
            rule_from_dict(data.get("da", {})),
            rule_from_dict(data.get("db", {})),
            rule_from_dict(data.get("dc", {})),
            data.get("description", ""),
            float(data.get("bound", BOUND_GUARD)),
        )


def free_jacobi(n):
    """J_n^0: zero diagonal, unit off-diagonals."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return TridiagonalMatrix(np.ones(n - 1), np.zeros(n), np.ones(n - 1))


def jacobi_section(seq, n):
    """Leading n x n block A_n = J_n + P_n of the infinite matrix."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a0, b0 = seq.background_coefficients(n)
    da, db, dc = seq.perturbation_coefficients(n)
    sub, diag, sup = a0 + da, b0 + db, a0 + dc
    for name, arr in (("a", sub), ("b", diag), ("c", sup)):
        if arr.size and (not np.all(np.isfinite(arr)) or np.abs(arr).max() > seq.bound):
            raise Unbounded(f"coefficient {name} exceeds the bound guard {seq.bound:g}")
    return TridiagonalMatrix(sub, diag, sup)


def background_section(seq, n):
    """Leading n x n block of the unperturbed background J_n^(0)."""
    a0, b0 = seq.background_coefficients(n)
    return TridiagonalMatrix(a0, b0, a0)


def perturbation_section(seq, n):
    """Leading n x n block P_n of the perturbation."""
    da, db, dc = seq.perturbation_coefficients(n)
    return TridiagonalMatrix(da, db, dc)


def perturbation_l1(seq, n):
    """||P_n||_[1] summed straight from the coefficient rules."""
    da, db, dc = seq.perturbation_coefficients(n)
    return math.fsum(np.abs(np.concatenate([da, db, dc])))


def periodic_jacobi(bg, m):
    """J_m[a, b], the leading m x m block of the k-periodic Jacobi matrix."""
    if m < 1:
        raise ValueError("m must be >= 1")
    seq = CoefficientSequence(bg)
    return background_section(seq, m)


def block_toeplitz(sym, n):
    """T_n(sym): kn x kn matrix whose (p, q) block is the coefficient p - q."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = sym.k
    T = np.zeros((k * n, k * n), dtype=np.complex128)
    for j, coeff in sym.coeffs.items():
        if abs(j) >= n:
            continue
        for q in range(max(0, -j), min(n, n - j)):
            p = q + j
            T[p * k : (p + 1) * k, q * k : (q + 1) * k] = coeff
    return T


def truncated_block_toeplitz(sym, m):
    """Leading m x m principal block of the infinite block Toeplitz matrix."""
    if m < 1:
        raise ValueError("m must be >= 1")
    n = -(-m // sym.k)
    return block_toeplitz(sym, n)[:m, :m]


# -- perturbation diagnostics ---------------------------------------------------

TRACE_CLASS_REL_INCREMENT = 1e-3
CESARO_DECAY_FACTOR = 2.0


@dataclass(frozen=True)
class PerturbationDiagnostics:
    """Partial sums S_n of the perturbation moduli along a ladder.

    ``verdict_hint`` is a heuristic: no finite prefix decides the asymptotic
    class of a sequence.
    """

    n_ladder: tuple
    partial_sums: tuple
    cesaro_ratios: tuple
    verdict_hint: str

    def to_dict(self):
        return {
            "n_ladder": list(self.n_ladder),
            "partial_sums": list(self.partial_sums),
            "cesaro_ratios": list(self.cesaro_ratios),
            "verdict_hint": self.verdict_hint,
            "heuristic": True,
        }


def _row_sums(seq, n):
    # row r (1-based) of P_infinity holds da_{r-1}, db_{r-1}, dc_r
    j = np.arange(n)
    da = np.abs(seq.da(j)) * (j >= 1)
    db = np.abs(seq.db(j))
    dc = np.abs(seq.dc(j + 1))
    return np.broadcast_to(da, (n,)) + np.broadcast_to(db, (n,)) + np.broadcast_to(dc, (n,))


def perturbation_diagnostics(seq, n_ladder):
    ladder = tuple(int(n) for n in n_ladder)
    if not ladder or any(b <= a for a, b in zip(ladder, ladder[1:])) or ladder[0] < 1:
        raise ValueError("n_ladder must be strictly increasing positive integers")
    rows = _row_sums(seq, ladder[-1])
    sums = tuple(math.fsum(rows[:n]) for n in ladder)
    ratios = tuple(s / n for s, n in zip(sums, ladder))
    return PerturbationDiagnostics(ladder, sums, ratios, _verdict(sums, ratios))


def _verdict(sums, ratios):
    if sums[-1] == 0.0:
        return "trace-class-consistent"
    if len(sums) >= 2:
        if (sums[-1] - sums[-2]) / sums[-1] < TRACE_CLASS_REL_INCREMENT:
            return "trace-class-consistent"
        monotone = all(b < a for a, b in zip(ratios, ratios[1:]))
        if monotone and ratios[-1] * CESARO_DECAY_FACTOR <= ratios[0]:
            return "cesaro-consistent"
        if all(b >= a for a, b in zip(ratios, ratios[1:])):
            return "inconsistent"
    return "inconclusive"


# -- presets --------------------------------------------------------------------


def _free(**_):
    return CoefficientSequence(FREE_BACKGROUND, description="free Jacobi J^0")


def _trace_class(background=FREE_BACKGROUND, amplitude=1.0, **_):
    amp = complex(amplitude)
    return CoefficientSequence(
        background,
        da=PowerDecay(0.5 * amp, 2.0),
        db=PowerDecay((1.0 + 1.0j) * amp, 2.0),
        dc=PowerDecay(-0.5j * amp, 2.0),
        description="trace-class perturbation, entries ~ 1/j^2",
    )


def _cesaro(background=FREE_BACKGROUND, amplitude=1.0, **_):
    amp = complex(amplitude)
    return CoefficientSequence(
        background,
        da=PowerDecay(0.25 * amp, 0.5),
        db=PowerDecay((0.5 + 0.5j) * amp, 0.5),
        dc=PowerDecay(0.25 * amp, 0.5),
        description="Cesaro compact perturbation, entries ~ 1/sqrt(j)",
    )


def _compact(background=FREE_BACKGROUND, amplitude=1.0, **_):
    amp = complex(amplitude)
    return CoefficientSequence(
        background,
        da=PowerDecay(0.5 * amp, 1.0),
        db=PowerDecay(1.0j * amp, 1.0),
        dc=PowerDecay(0.5j * amp, 1.0),
        description="compact perturbation, entries ~ 1/j",
    )


def _rank_one(background=FREE_BACKGROUND, amplitude=1.5j, index=0, **_):
    return CoefficientSequence(
        background,
        db=FiniteList((complex(amplitude),), int(index)),
        description="single nonzero diagonal perturbation",
    )


PERIODIC_BACKGROUNDS = {
    "periodic2_gap": PeriodicBackground((1.0, 0.5), (0.0, 0.0)),
    "periodic3_gap": PeriodicBackground((1.0, 0.8, 0.6), (0.0, 0.5, -0.5)),
}


def _periodic(name):
    def make(**_):
        return CoefficientSequence(PERIODIC_BACKGROUNDS[name], description=f"{name} background")

    return make


PRESETS = {
    "free": (_free, "free Jacobi matrix J^0 (k=1, a=(1), b=(0)); no parameters"),
    "trace_class_demo": (
        _trace_class,
        "da=0.5A/(j+1)^2, db=(1+i)A/(j+1)^2, dc=-0.5iA/(j+1)^2; amplitude A (default 1)",
    ),
    "cesaro_demo": (
        _cesaro,
        "da=dc=0.25A/sqrt(j+1), db=(0.5+0.5i)A/sqrt(j+1); amplitude A (default 1)",
    ),
    "compact_demo": (
        _compact,
        "da=0.5A/(j+1), db=iA/(j+1), dc=0.5iA/(j+1); amplitude A (default 1)",
    ),
    "rank_one_demo": (
        _rank_one,
        "db_index=amplitude, all else zero; amplitude (default 1.5i), index (default 0)",
    ),
    "periodic2_gap": (_periodic("periodic2_gap"), "k=2 background a=(1, 0.5), b=(0, 0); spectral gap"),
    "periodic3_gap": (
        _periodic("periodic3_gap"),
        "k=3 background a=(1, 0.8, 0.6), b=(0, 0.5, -0.5); spectral gaps",
    ),
}


def preset(name, **params):
    """Build the named sequence preset.

    Perturbation presets accept ``background`` (a PeriodicBackground) and
    ``amplitude``; periodic presets take no parameters.
    """
    try:
        factory, _ = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}") from None
    return factory(**params)
