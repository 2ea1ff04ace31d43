"""Exception hierarchy shared by the library and the command line."""


class HeapTrussError(Exception):
    """Base class for all errors raised by heaptruss."""


class InputError(HeapTrussError, ValueError):
    """Malformed or inadmissible input (CLI exit code 2)."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class EmptyCarrierError(InputError):
    """Raised for size-0 carriers; the empty heap is not representable."""

    def __init__(self, line=None):
        super().__init__("size = 0: empty heap not representable", line=line)


class ResourceLimitError(HeapTrussError):
    """An exhaustive scan would exceed the configured size cap (CLI exit code 3)."""

    def __init__(self, what, n, cap):
        self.n = n
        self.cap = cap
        super().__init__(f"{what}: size {n} exceeds cap {cap}")


class TheoremViolation(HeapTrussError, AssertionError):
    """Two routes that must agree by a theorem produced different results."""
