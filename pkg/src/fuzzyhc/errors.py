"""Exception hierarchy shared by the pipeline stages."""


class FuzzyClusterError(Exception):
    """Base class for all errors raised by fuzzyhc."""

    stage = "pipeline"


class IngestError(FuzzyClusterError):
    """Input documents or points could not be read or turned into data."""

    stage = "ingest"


class EmptyVocabularyError(IngestError):
    def __init__(self, message="empty vocabulary"):
        super().__init__(message)


class DegenerateDatasetError(FuzzyClusterError):
    """All points coincide, so the distance normalizer is undefined."""

    stage = "relation"

    def __init__(self, message="degenerate dataset: zero diameter"):
        super().__init__(message)


class HierarchyError(FuzzyClusterError):
    stage = "partition"

    def __init__(self, message="schedule is not a hierarchy"):
        super().__init__(message)
