"""Exception types raised across disknorm."""


class DiskNormError(Exception):
    """Base class for all disknorm errors."""


class ExprSyntaxError(DiskNormError, ValueError):
    """Malformed expression source.

    ``position`` is the 1-based column of the offending token (one past the
    end of the input for premature end-of-input), ``expected`` the set of
    token descriptions that would have been accepted there.
    """

    def __init__(self, position, expected, found=None):
        self.position = position
        self.expected = frozenset(expected)
        self.found = found
        what = "end of input" if found is None else repr(found)
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"column {position}: expected one of {{{exp}}}, found {what}")


class UnknownIdentifier(DiskNormError, ValueError):
    def __init__(self, name, position=None):
        self.name = name
        self.position = position
        where = "" if position is None else f" at column {position}"
        super().__init__(f"unknown identifier {name!r}{where}")


class PoleEncountered(DiskNormError, ArithmeticError):
    def __init__(self, z=None, detail=""):
        self.z = z
        msg = "pole encountered" if z is None else f"pole encountered at z={z!r}"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class BranchCutArgumentZero(DiskNormError, ArithmeticError):
    def __init__(self, z=None):
        self.z = z
        super().__init__(f"log/pow argument vanishes at z={z!r}")


class NotAnalyticAtZero(DiskNormError, ArithmeticError):
    pass


class DegenerateFunction(DiskNormError, ValueError):
    pass


class NotSensePreserving(DiskNormError, ValueError):
    def __init__(self, z=None, modulus=None):
        self.z = z
        self.modulus = modulus
        if z is None:
            super().__init__("|omega| reaches 1: not sense-preserving")
        else:
            super().__init__(f"|omega|={modulus!r} too close to 1 at z={z!r}")


class InvalidExponent(DiskNormError, ValueError):
    pass


class NormalizationViolated(DiskNormError, ValueError):
    pass


class UnknownCatalogName(DiskNormError, KeyError):
    def __str__(self):
        return f"unknown catalog entry {self.args[0]!r}"


class NoFiniteSamples(DiskNormError, RuntimeError):
    pass


class DomainError(DiskNormError, ValueError):
    pass
