"""Exception hierarchy shared by the calculation modules and the CLI."""


class NzebError(Exception):
    """Base class for all toolkit errors."""


class DomainError(NzebError, ValueError):
    """An argument lies outside the domain of a calculation."""


class DesignError(NzebError):
    """A requested design is infeasible (for example an empty string-sizing range)."""


class InputError(NzebError):
    """Malformed input file. ``location`` names the file and line/row when known."""

    def __init__(self, message, location=None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)
