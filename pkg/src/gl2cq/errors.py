class Gl2cqError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(Gl2cqError):
    """Invalid run configuration, X-family or command-line input."""


class ExpressionSyntaxError(ConfigError):
    """
    A polynomial expression could not be parsed.

    Parameters
    ----------
    position : int
        1-based column at which parsing stopped.
    expected : str
        Description of what the parser was expecting there.
    text : str
        The full text being parsed.
    """

    def __init__(self, position: int, expected: str, text: str = ""):
        self.position = position
        self.expected = expected
        self.text = text
        super().__init__(f"Syntax error at column {position}: expected {expected}.")


class NonHermitianError(Gl2cqError):
    """An evaluated Gram matrix turned out not to be hermitian."""
