"""Exception hierarchy shared across the package."""


class CricpredError(Exception):
    """Base class for all package errors."""


# --- ingestion -------------------------------------------------------------

class IngestionError(CricpredError):
    """Raised for malformed or inconsistent input files."""


class MissingColumn(IngestionError):
    pass


class UnknownTeam(IngestionError):
    pass


class InvalidRow(IngestionError):
    pass


class NegativeStat(IngestionError):
    pass


class DuplicatePlayer(IngestionError):
    pass


class NoResult(CricpredError):
    """The match has no decisive winner."""


# --- player scoring --------------------------------------------------------

class InsufficientData(CricpredError):
    pass


class RankDeficient(CricpredError):
    pass


# --- team strength ---------------------------------------------------------

class EmptyRoster(CricpredError):
    pass


class ZeroAppearances(CricpredError):
    pass


class MissingRoster(CricpredError):
    pass


class LedgerMiss(CricpredError):
    pass


# --- feature pipeline ------------------------------------------------------

class EmptyDataset(CricpredError):
    pass


class TooFewRows(CricpredError):
    pass


class TargetTooLarge(CricpredError):
    pass


# --- classifiers -----------------------------------------------------------

class SingleClassData(CricpredError):
    pass


class InvalidHyperparameter(CricpredError):
    pass


class NonConvergence(CricpredError):
    pass


class SchemaMismatch(CricpredError):
    pass


class VersionMismatch(CricpredError):
    pass


class CorruptDocument(CricpredError):
    pass


# --- evaluation ------------------------------------------------------------

class TooFewPerClass(CricpredError):
    pass


class BadK(CricpredError):
    pass
