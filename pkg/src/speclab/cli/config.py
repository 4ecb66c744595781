"""Experiment configuration files.

Line-oriented ``key = value`` pairs under ``[section]`` headers; arrays are
comma lists and complex numbers use ``i`` (``0.5+0.5i``). Example::

    [experiment]
    kind = distribution
    seed = 20240101

    [sequence]
    preset = free

    [ladder]
    n = 64, 256, 1024

    [functions]
    tests = z^2, z^4, hat(0, 0.1, 0.3)

Sections and keys
-----------------
experiment  kind (required), seed, out
sequence    preset (default ``free``), amplitude, index, and for
            ``preset = custom`` the rules da, db, dc written as
            ``zero``, ``power(amp, p[, shift])``, ``geometric(amp, ratio)``,
            ``periodic(v0, v1, ...)`` or ``finite(start, v0, v1, ...)``
background  a, b (comma lists of equal length k); overrides the preset's
ladder      n (strictly increasing, max 4096)
cluster     eps, points, j_max
functions   tests
quadrature  n, range_n
random      count, min_order, max_order, eps
"""

import configparser
import re
from dataclasses import dataclass, field

from speclab.analysis.functions import parse_test_function
from speclab.errors import ConfigInvalid
from speclab.sampling import DEFAULT_SEED
from speclab.sequences import (
    PRESETS,
    CoefficientSequence,
    FiniteList,
    Geometric,
    PeriodicBackground,
    Periodic,
    PowerDecay,
    Zero,
    preset,
)
from speclab.symbols import DEFAULT_QUADRATURE_N, DEFAULT_RANGE_N

KINDS = ("attract", "blockcheck", "cluster", "distribution", "inequalities", "norms")
MAX_RUNG = 4096
LADDER_REQUIRED = ("attract", "blockcheck", "cluster", "distribution")

KNOWN_KEYS = {
    "experiment": {"kind", "seed", "out"},
    "sequence": {"preset", "amplitude", "index", "da", "db", "dc"},
    "background": {"a", "b"},
    "ladder": {"n"},
    "cluster": {"eps", "points", "j_max"},
    "functions": {"tests"},
    "quadrature": {"n", "range_n"},
    "random": {"count", "min_order", "max_order", "eps"},
}


@dataclass
class ExperimentConfig:
    kind: str
    sequence: CoefficientSequence
    preset_name: str
    background: PeriodicBackground
    n_ladder: list = field(default_factory=list)
    eps: list = field(default_factory=lambda: [0.1])
    points: list = field(default_factory=lambda: [0.0])
    j_max: int = 3
    tests: list = field(default_factory=list)
    quadrature_n: int = DEFAULT_QUADRATURE_N
    range_n: int = DEFAULT_RANGE_N
    seed: int = DEFAULT_SEED
    out: str = None
    random_count: int = 100
    random_min_order: int = 2
    random_max_order: int = 64
    random_eps: list = field(default_factory=lambda: [0.1, 0.5])

    def to_dict(self):
        return {
            "kind": self.kind,
            "preset": self.preset_name,
            "sequence": self.sequence.to_dict(),
            "background": self.background.to_dict(),
            "n_ladder": list(self.n_ladder),
            "eps": list(self.eps),
            "points": [[complex(p).real, complex(p).imag] for p in self.points],
            "j_max": self.j_max,
            "tests": [F.label for F in self.tests],
            "quadrature_n": self.quadrature_n,
            "range_n": self.range_n,
            "seed": self.seed,
            "random": {
                "count": self.random_count,
                "min_order": self.random_min_order,
                "max_order": self.random_max_order,
                "eps": list(self.random_eps),
            },
        }


def parse_complex(text):
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty number")
    return complex(s.replace("i", "j"))


def _split(text):
    return [part.strip() for part in text.split(",") if part.strip()]


_RULE = re.compile(r"^(\w+)\s*(?:\((.*)\))?$")


def parse_rule(text):
    m = _RULE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse rule {text!r}")
    name, args = m.group(1), _split(m.group(2) or "")
    if name == "zero" and not args:
        return Zero()
    if name == "power" and len(args) in (2, 3):
        return PowerDecay(parse_complex(args[0]), float(args[1]), float(args[2]) if len(args) == 3 else 1.0)
    if name == "geometric" and len(args) == 2:
        return Geometric(parse_complex(args[0]), float(args[1]))
    if name == "periodic" and args:
        return Periodic(tuple(parse_complex(a) for a in args))
    if name == "finite" and len(args) >= 2:
        return FiniteList(tuple(parse_complex(a) for a in args[1:]), int(args[0]))
    raise ValueError(f"cannot parse rule {text!r}")


def _line_index(text):
    """(section, key) -> 1-based line number, for diagnostics."""
    where = {}
    section = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if s.startswith("[") and s.endswith("]"):
            section = s[1:-1].strip()
            where[(section, None)] = lineno
        elif "=" in s and section and not s.startswith(("#", ";")):
            where[(section, s.split("=", 1)[0].strip().lower())] = lineno
    return where


class _Reader:
    def __init__(self, parser, lines):
        self.parser = parser
        self.lines = lines

    def error(self, section, key, message):
        line = self.lines.get((section, key), self.lines.get((section, None)))
        raise ConfigInvalid(message, field=f"{section}.{key}" if key else section, line=line)

    def get(self, section, key, convert, default=None, required=False):
        if not self.parser.has_option(section, key):
            if required:
                self.error(section, key, "missing required field")
            return default
        raw = self.parser.get(section, key)
        try:
            return convert(raw)
        except (ValueError, TypeError, KeyError) as exc:
            self.error(section, key, f"invalid value {raw!r}: {exc}")


def _ints(text):
    return [int(x) for x in _split(text)]


def _floats(text):
    return [float(x) for x in _split(text)]


def _complexes(text):
    return [parse_complex(x) for x in _split(text)]


def _tests(text):
    # split on commas that are not inside parentheses
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        cur += ch
    parts.append(cur)
    return [parse_test_function(p) for p in parts if p.strip()]


def parse_config(text):
    """Parse and validate configuration text into an ExperimentConfig."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigInvalid(str(exc).splitlines()[0], line=getattr(exc, "lineno", None)) from None
    r = _Reader(parser, _line_index(text))

    for section in parser.sections():
        if section not in KNOWN_KEYS:
            r.error(section, None, "unknown section")
        for key in parser.options(section):
            if key not in KNOWN_KEYS[section]:
                r.error(section, key, "unknown field")
    if not parser.has_section("experiment"):
        raise ConfigInvalid("missing [experiment] section", field="experiment")

    kind = r.get("experiment", "kind", str.strip, required=True)
    if kind not in KINDS:
        r.error("experiment", "kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    seed = r.get("experiment", "seed", int, DEFAULT_SEED)
    if seed < 0 or seed >= 2**64:
        r.error("experiment", "seed", "seed must fit in 64 unsigned bits")
    out = r.get("experiment", "out", str.strip)

    name = r.get("sequence", "preset", str.strip, "free")
    if name != "custom" and name not in PRESETS:
        r.error("sequence", "preset", f"unknown preset {name!r}")

    background = None
    if parser.has_section("background"):
        a = r.get("background", "a", _floats, required=True)
        b = r.get("background", "b", _floats, required=True)
        try:
            background = PeriodicBackground(tuple(a), tuple(b))
        except ValueError as exc:
            r.error("background", "a", str(exc))

    params = {}
    if background is not None:
        params["background"] = background
    amplitude = r.get("sequence", "amplitude", parse_complex)
    if amplitude is not None:
        params["amplitude"] = amplitude
    index = r.get("sequence", "index", int)
    if index is not None:
        params["index"] = index
    if name == "custom":
        seq = CoefficientSequence(
            background or PeriodicBackground((1.0,), (0.0,)),
            r.get("sequence", "da", parse_rule, Zero()),
            r.get("sequence", "db", parse_rule, Zero()),
            r.get("sequence", "dc", parse_rule, Zero()),
            description="custom sequence",
        )
    else:
        for key in ("da", "db", "dc"):
            if parser.has_option("sequence", key):
                r.error("sequence", key, "rules are only accepted with preset = custom")
        seq = preset(name, **params)
        if background is not None and seq.background != background:
            seq = CoefficientSequence(background, seq.da, seq.db, seq.dc, seq.description, seq.bound)

    ladder = r.get("ladder", "n", _ints, [], required=kind in LADDER_REQUIRED)
    if kind in LADDER_REQUIRED and not ladder:
        r.error("ladder", "n", "ladder is empty")
    if ladder:
        if ladder[0] < 1 or any(b <= a for a, b in zip(ladder, ladder[1:])):
            r.error("ladder", "n", "ladder must be strictly increasing positive integers")
        if ladder[-1] > MAX_RUNG:
            r.error("ladder", "n", f"largest rung exceeds {MAX_RUNG}")

    cfg = ExperimentConfig(kind, seq, name, seq.background, ladder, seed=seed, out=out)
    cfg.eps = r.get("cluster", "eps", _floats, cfg.eps)
    if not cfg.eps or any(not e > 0 for e in cfg.eps):
        r.error("cluster", "eps", "eps values must be positive")
    cfg.points = r.get("cluster", "points", _complexes, cfg.points)
    cfg.j_max = r.get("cluster", "j_max", int, cfg.j_max)
    if cfg.j_max < 1 or (kind == "attract" and cfg.j_max > ladder[0]):
        r.error("cluster", "j_max", "j_max must be between 1 and the smallest rung")
    cfg.tests = r.get("functions", "tests", _tests, None) or _tests("1, z, z^2, z^4")
    cfg.quadrature_n = r.get("quadrature", "n", int, cfg.quadrature_n)
    cfg.range_n = r.get("quadrature", "range_n", int, cfg.range_n)
    if cfg.quadrature_n < 2:
        r.error("quadrature", "n", "quadrature size must be >= 2")
    if cfg.range_n < 64:
        r.error("quadrature", "range_n", "range grid must be >= 64")
    cfg.random_count = r.get("random", "count", int, cfg.random_count)
    cfg.random_min_order = r.get("random", "min_order", int, cfg.random_min_order)
    cfg.random_max_order = r.get("random", "max_order", int, cfg.random_max_order)
    if cfg.random_count < 0:
        r.error("random", "count", "count must be nonnegative")
    if not 1 <= cfg.random_min_order <= cfg.random_max_order <= MAX_RUNG:
        r.error("random", "min_order", "need 1 <= min_order <= max_order <= 4096")
    cfg.random_eps = r.get("random", "eps", _floats, cfg.random_eps)
    if not cfg.random_eps or any(not e > 0 for e in cfg.random_eps):
        r.error("random", "eps", "eps values must be positive")
    return cfg


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigInvalid(f"cannot read config: {exc}") from None
    return parse_config(text)
