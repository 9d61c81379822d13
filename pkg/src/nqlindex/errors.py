"""Exception types shared across the package."""


class NqlIndexError(Exception):
    """Base class for all nqlindex errors."""


class MalformedRow(NqlIndexError):
    """A CSV row has the wrong column count or an unparseable number."""


class DuplicateCountry(NqlIndexError):
    """Two rows carry the same country name."""


class EmptyTable(NqlIndexError):
    """The table has fewer than two data rows."""


class ZeroVariance(NqlIndexError):
    """A column is constant and cannot be standardized."""


class ConvergenceFailure(NqlIndexError):
    """The Jacobi eigensolver exceeded its sweep budget."""


class SingularSystem(NqlIndexError):
    """The node-update linear system is singular (configuration bug)."""


class DegenerateSegment(NqlIndexError):
    """A polyline edge has zero length."""


class UnknownCountry(NqlIndexError):
    """A requested country is not present in the index table."""


class SchemaMismatch(NqlIndexError):
    """Model and data disagree on indicator columns."""


class UnwritablePath(NqlIndexError):
    """An output path cannot be written."""
