import logging
import sys
from functools import wraps
from typing import Callable, Optional

logger = logging.getLogger(__name__)

EXIT_FACTOR_FOUND = 0
EXIT_USAGE_ERROR = 1
EXIT_NO_FACTOR = 2


class ConfigurationError(ValueError):
    """Invalid user input; `field` names the offending option"""

    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field
        self.message = message

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


class DomainError(ValueError):
    """Mathematical precondition violated (e.g. base not coprime to N)"""


class SharedFactorFound(Exception):
    """The base shares a divisor with N, so N is already factored classically"""

    def __init__(self, base: int, factor: int):
        super().__init__(f"gcd({base}, N) = {factor}")
        self.base = base
        self.factor = factor


class ReportWriteError(OSError):
    """Report or histogram could not be written"""

    def __init__(self, destination: str, reason: str):
        super().__init__(f"cannot write {destination}: {reason}")
        self.destination = destination


class ErrorHandler:
    """Centralized error handling"""

    @staticmethod
    def handle_cli_errors(func: Callable[..., int]) -> Callable[..., int]:
        """Decorator mapping failures to a one-line diagnostic and exit code 1"""
        @wraps(func)
        def wrapper(*args, **kwargs) -> int:
            try:
                return func(*args, **kwargs)
            except ConfigurationError as e:
                ErrorHandler.show_error(str(e))
                logger.debug(f"Configuration error in {func.__name__}: {e}")
                return EXIT_USAGE_ERROR
            except (DomainError, ReportWriteError) as e:
                ErrorHandler.show_error(str(e))
                logger.debug(f"Error in {func.__name__}: {e}")
                return EXIT_USAGE_ERROR
            except Exception as e:
                ErrorHandler.show_error(f"unexpected failure: {e}")
                logger.error(f"Error in {func.__name__}: {e}", exc_info=True)
                return EXIT_USAGE_ERROR
        return wrapper

    @staticmethod
    def show_error(message: str, details: Optional[str] = None):
        """Print a single-line diagnostic to stderr"""
        line = f"error: {message}"
        if details:
            line += f" ({details})"
        print(line, file=sys.stderr)

    @staticmethod
    def show_warning(message: str):
        print(f"warning: {message}", file=sys.stderr)
