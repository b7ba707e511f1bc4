class PolyrankError(Exception):
    pass


class ParseError(PolyrankError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ResourceLimitError(PolyrankError):
    """A configured resource guard (DNF cells, iterations) was exceeded."""
