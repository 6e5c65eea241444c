"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration, parameters, or input collection."""


class FormatError(ValueError):
    """A data file (corpus, lexicon) does not match its documented format."""

    def __init__(self, path, lineno, message):
        self.path = str(path)
        self.lineno = lineno
        super().__init__(f"{self.path}:{lineno}: {message}")


class EmptyDocumentError(ValueError):
    """A document tokenized to zero tokens."""
