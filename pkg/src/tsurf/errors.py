"""Exception hierarchy.

Input problems (bad files, bad parameters) derive from :class:`InputError`;
the CLI maps those to exit code 2. :class:`InternalGeometryError` and its
relatives signal a bug and should never escape on valid input.
"""


class TsurfError(Exception):
    pass


class InputError(TsurfError, ValueError):
    pass


# exactnum
class Reducible(InputError):
    pass


class RootNotIsolated(InputError):
    pass


class FieldMismatch(TsurfError, TypeError):
    pass


# surface
class NetSyntaxError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class PairingMismatch(InputError):
    pass


class NotSimple(InputError):
    pass


class NotConnected(InputError):
    pass


class BadField(InputError):
    pass


class BadMark(InputError):
    pass


class AngleNotMultipleOf2Pi(InputError):
    pass


class SingularMatrix(InputError):
    pass


class OrientationReversing(InputError):
    pass


class MultiPolygonUnsupported(InputError):
    pass


class BadChord(InputError):
    pass


# topology
class TorsionFound(TsurfError):
    pass


# flow
class NotComplete(TsurfError):
    pass


class InternalGeometryError(TsurfError):
    pass


# invariants
class ZeroInput(InputError):
    pass


class JZero(InternalGeometryError):
    pass


class PhiMismatch(InternalGeometryError):
    pass


# covering
class EmptyInput(InputError):
    pass


class HolonomyNotInLattice(TsurfError):
    pass


class NonIntegerDegree(InternalGeometryError):
    pass


# catalog
class NotTransitive(InputError):
    pass


class BadParameters(InputError):
    pass


class AlphaRational(InputError):
    pass
