"""Error type shared by the file loaders."""


class InputError(ValueError):
    """Raised when an input file fails validation.

    Carries enough context (source name, line number) to point at the
    offending line in a diagnostic.
    """

    def __init__(self, message: str, *, source: str = "", line: int | None = None):
        self.source = source
        self.line = line
        prefix = ""
        if source:
            prefix = source
        if line is not None:
            prefix = f"{prefix}:{line}" if prefix else f"line {line}"
        super().__init__(f"{prefix}: {message}" if prefix else message)
