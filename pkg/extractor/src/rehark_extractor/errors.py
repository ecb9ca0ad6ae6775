"""Extractor error hierarchy."""


class ExtractorError(Exception):
    """Base class for all extractor failures."""


class ModelLoadFailure(ExtractorError):
    """The requested encoder backbone could not be loaded."""


class ImageDecodeFailure(ExtractorError):
    """An input image could not be opened or decoded."""


class EmptyClassPrompts(ExtractorError):
    """A class has no description for a required prompt source."""


class SplitError(ExtractorError):
    """A dataset split list is malformed or cannot supply the request."""


class IoFailure(ExtractorError):
    """Reading or writing an artifact failed at the OS level."""
