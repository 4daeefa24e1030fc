"""Custom exceptions raised while loading data and running analyses."""


class BaseHullscopeException(Exception):
    """
    Exception raised when an analysis cannot proceed.

    Every exception carries the exit code the command line returns when it
    reaches the top level uncaught.
    """
    default_message = 'Invalid input.'
    exit_code = 1

    def __init__(self, message_override=None, exit_code_override=None):
        message = message_override or self.default_message
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code_override or self.exit_code


class ArgumentException(BaseHullscopeException):
    """An argument is out of range or inconsistent with another argument."""
    default_message = 'Invalid argument.'
    exit_code = 2


class FormatException(BaseHullscopeException):
    """A file does not conform to the format it claims to have."""
    default_message = 'File does not conform to its declared format.'
    exit_code = 3


class DegenerateDirectionException(BaseHullscopeException):
    """The query lies on the hull, so it has no direction to the hull."""
    default_message = 'The query is inside the hull; it has no direction ' \
                      'to the hull.'
    exit_code = 2


class DegenerateHullException(BaseHullscopeException):
    """The points do not span a two dimensional hull."""
    default_message = 'All points are collinear.'
    exit_code = 2


class TrainingDivergedException(BaseHullscopeException):
    """The training loss stopped being finite."""

    def __init__(self, step):
        super().__init__(
            message_override='Training diverged at step %d.' % step)
        self.step = step


class UnconvergedRunException(BaseHullscopeException):
    """Too many queries hit the iteration limit before certifying their gap."""
    exit_code = 4

    def __init__(self, unconverged, total, fraction_max):
        super().__init__(
            message_override='%d of %d queries did not converge (allowed '
                             'fraction %g).' % (unconverged, total, fraction_max))
        self.unconverged = unconverged
        self.total = total
