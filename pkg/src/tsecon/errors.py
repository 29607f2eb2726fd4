"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """Raised when an input lies outside the mathematical domain of an operation.

    The command line layer maps this class to exit code 1; anything else
    escaping a command is a bug.
    """


class CollinearityError(DomainError):
    """Raised when a design matrix is rank deficient."""

    def __init__(self, columns):
        self.columns = list(columns)
        msg = "perfect multicollinearity among columns: " + ", ".join(self.columns)
        super().__init__(msg)
