"""Exception hierarchy shared by every module."""


class GromovError(Exception):
    """Base class for all errors raised by gromovclass."""


class ValidationError(GromovError, ValueError):
    """A structure or permutation failed validation."""


class DuplicateNode(ValidationError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"node {node} appears more than once as owner")


class MissingNode(ValidationError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"node {node} has no pick")


class PairContainsOwner(ValidationError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"node {node} picks a pair containing itself or a repeated node")


class IndexOutOfRange(ValidationError):
    def __init__(self, node, n):
        self.node = node
        self.n = n
        super().__init__(f"index {node} is outside 1..{n}")


class MalformedToken(ValidationError):
    def __init__(self, token):
        self.token = token
        super().__init__(f"malformed token {token!r}")


class WrongTokenCount(ValidationError):
    def __init__(self, got, n):
        self.got = got
        self.n = n
        super().__init__(f"expected {n} tokens, got {got}")


class LengthMismatch(GromovError, ValueError):
    def __init__(self, expected, got):
        self.expected = expected
        self.got = got
        super().__init__(f"length mismatch: expected {expected}, got {got}")


class SizeMismatch(LengthMismatch):
    pass


class UnsupportedN(GromovError, ValueError):
    def __init__(self, n, lo=4, hi=8):
        self.n = n
        super().__init__(f"n={n} is not supported (allowed {lo}..{hi})")


class MetricError(ValidationError):
    """Malformed distance matrix; carries 1-based line/column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class NotDeltaGeneric(GromovError):
    def __init__(self, node, tied):
        self.node = node
        self.tied = tuple(tied)
        pairs = ", ".join(f"{{{b},{c}}}" for b, c in self.tied)
        super().__init__(f"minimal Gromov product at node {node} is attained by {pairs}")


class NotAllowable(GromovError):
    def __init__(self, violation):
        self.violation = violation
        super().__init__(f"structure is not allowable: {violation}")


class NotGeneric(GromovError):
    pass


class NotFound(GromovError):
    pass


class LookupFailure(GromovError):
    pass


class CatalogFileError(GromovError):
    pass


class SchemaVersionMismatch(CatalogFileError):
    pass


class CorruptRecord(CatalogFileError):
    pass


class FixtureError(GromovError, ValueError):
    """A fixture file that cannot be read as data (bad directive or token)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
