"""Exception hierarchy shared by all speclab modules."""


class SpeclabError(Exception):
    """Base class for every error raised by speclab."""


class NonConvergence(SpeclabError):
    """An iterative solver ran out of its iteration budget.

    ``index`` is the position of the eigenvalue (or sweep number) that was
    still undecided when the budget ran out.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NotHessenberg(SpeclabError):
    pass


class NotHermitian(SpeclabError):
    pass


class NotHermitianSymbol(SpeclabError):
    pass


class Unbounded(SpeclabError):
    """A realized Jacobi coefficient exceeded the configured bound guard."""


class GridTooCoarse(SpeclabError):
    pass


class ConfigInvalid(SpeclabError):
    """Experiment configuration failed to parse or validate.

    ``field`` names the offending ``section.key`` and ``line`` its line in the
    config file, when known.
    """

    def __init__(self, message, field=None, line=None):
        where = []
        if field:
            where.append(field)
        if line is not None:
            where.append(f"line {line}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)
        self.field = field
        self.line = line
