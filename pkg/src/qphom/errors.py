"""Shared exception and warning types."""


class DataError(Exception):
    """Input data cannot be used: missing file, bad cell, empty series, or
    embedding parameters that leave no points."""


class InconsistentTableError(Exception):
    """A persistent Betti table violates monotonicity or yields a negative
    diagram multiplicity; this signals a bug upstream, not bad user data."""


class VerificationMismatch(Exception):
    """The spectral pipeline and the classical reduction disagree."""


class SpectralGapWarning(UserWarning):
    """An eigenvalue sits just outside the multiplicity-counting window,
    making the count ambiguous at the configured tolerance."""


class ReadoutQualityWarning(UserWarning):
    """The phase-estimation readout rounds to an integer with a large
    residue; the chosen repetition/grid parameters are too coarse."""
