"""Config fixtures shared by the CLI tests and the acceptance suite.

Each entry maps a name to (config text, expected exit status).
"""

VALID = {
    "distribution_free": (
        """
[experiment]
kind = distribution
seed = 1

[sequence]
preset = free

[ladder]
n = 64, 256, 1024

[functions]
tests = 1, z^2
""",
        0,
    ),
    "cluster_trace_class": (
        """
[experiment]
kind = cluster

[sequence]
preset = trace_class_demo

[ladder]
n = 16, 32, 64

[cluster]
eps = 0.05, 0.1
""",
        0,
    ),
    "attract_free": (
        """
[experiment]
kind = attract

[ladder]
n = 16, 64

[cluster]
points = 0, 1+0.5i, 5
j_max = 2
""",
        0,
    ),
    "inequalities_small": (
        """
[experiment]
kind = inequalities
seed = 3

[sequence]
preset = cesaro_demo

[ladder]
n = 8, 24

[random]
count = 20
min_order = 2
max_order = 16
""",
        0,
    ),
    "norms_100": (
        """
[experiment]
kind = norms
seed = 5

[random]
count = 100
min_order = 2
max_order = 24
""",
        0,
    ),
    "blockcheck_k3": (
        """
[experiment]
kind = blockcheck

[background]
a = 1, 2, 0.5
b = 0, 1, -1

[ladder]
n = 1, 2, 7, 30
""",
        0,
    ),
}

FAILING = {
    # geometric growth trips the 1e6 bound guard at the larger rung
    "unbounded_rung": (
        """
[experiment]
kind = distribution

[sequence]
preset = custom
db = geometric(1, 2)

[ladder]
n = 8, 40
""",
        2,
    ),
}

MALFORMED = {
    "missing_ladder": (
        """
[experiment]
kind = cluster

[sequence]
preset = trace_class_demo
""",
        1,
    ),
    "decreasing_ladder": ("[experiment]\nkind = distribution\n[ladder]\nn = 64, 32\n", 1),
    "rung_too_large": ("[experiment]\nkind = distribution\n[ladder]\nn = 64, 8192\n", 1),
    "negative_eps": ("[experiment]\nkind = cluster\n[ladder]\nn = 8\n[cluster]\neps = 0.1, -1\n", 1),
    "unknown_kind": ("[experiment]\nkind = spectra\n", 1),
    "unknown_preset": ("[experiment]\nkind = attract\n[sequence]\npreset = wild\n[ladder]\nn = 8\n", 1),
    "unknown_key": ("[experiment]\nkind = norms\ncolour = blue\n", 1),
    "bad_number": ("[experiment]\nkind = distribution\n[ladder]\nn = 8, twelve\n", 1),
    "no_section": ("kind = norms\n", 1),
    "bad_test_function": ("[experiment]\nkind = distribution\n[ladder]\nn = 8\n[functions]\ntests = sin(z)\n", 1),
}
