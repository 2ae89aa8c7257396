"""Exception types raised by the pulsatio library.

Every library-specific failure derives from :class:`PulsatioError`, so callers
can catch one base class at pipeline boundaries (the CLI does exactly that).
"""


class PulsatioError(Exception):
    """Base class for all pulsatio errors."""


# --- input / file handling ---------------------------------------------------

class MissingFile(PulsatioError):
    pass


class ParseError(PulsatioError):
    def __init__(self, row, message=""):
        self.row = row
        super().__init__(message or f"unparseable value at row {row}")


class EmptySignal(PulsatioError):
    pass


class InvalidParameter(PulsatioError):
    pass


class RaggedRows(PulsatioError):
    pass


class IoError(PulsatioError):
    pass


class LengthMismatch(PulsatioError):
    pass


# --- filtering / spectral ----------------------------------------------------

class SignalTooShort(PulsatioError):
    pass


class InvalidCutoff(PulsatioError):
    pass


class NoPeakInBand(PulsatioError):
    pass


class WindowTooShort(PulsatioError):
    pass


class EmptyBand(PulsatioError):
    pass


# --- beats ---------------------------------------------------------------

class NoBeatsFound(PulsatioError):
    pass


class NoCompleteBeats(PulsatioError):
    pass


class AllBeatsRejected(PulsatioError):
    pass


class NoEligibleBeats(PulsatioError):
    pass


# --- wavelets / multifractal ---------------------------------------------

class TooManyLevels(PulsatioError):
    pass


class InconsistentPyramid(PulsatioError):
    pass


class TooFewLevels(PulsatioError):
    pass


class DegenerateScale(PulsatioError):
    pass


class InsufficientScales(PulsatioError):
    pass


class NonPositiveStructureFunction(PulsatioError):
    pass


class IllConditionedFit(PulsatioError):
    pass


class DegenerateSpectrum(PulsatioError):
    pass


# --- features / quality ----------------------------------------------------

class DegenerateInput(PulsatioError):
    pass


class OrderTooHigh(PulsatioError):
    pass


class ConstantInput(PulsatioError):
    pass


class EmptyData(PulsatioError):
    pass
