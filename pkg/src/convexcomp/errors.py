"""Exception hierarchy shared by all modules."""


class ConvexCompError(Exception):
    """Base class. `exit_code` is what the command line returns."""
    exit_code = 3


class InputError(ConvexCompError, ValueError):
    exit_code = 2


class DomainError(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NormalizationError(InputError):
    pass


class DegenerateSpanError(InputError):
    pass


class MembershipError(InputError):
    pass


class RationalFormatError(InputError):
    pass


class SchemaError(InputError):
    pass


class UnboundedPolyhedronError(ConvexCompError):
    pass


class RankDeficiencyError(ConvexCompError):
    pass


class CertificateError(ConvexCompError):
    """A solver result failed its independent re-check."""
    pass


class FactorizationError(ConvexCompError):
    pass
