"""Contains a list of Exceptions used in this project."""


class IpsUncertException(Exception):

    """Superclass for all ipsuncert exceptions."""


class DomainError(IpsUncertException, ValueError):

    """Indicates an argument outside the domain of a statistical function."""


class ValidationError(IpsUncertException):

    """Indicates an invalid configuration value.

    The offending configuration key is available as `key`.

    """

    def __init__(self, key, message):
        super(ValidationError, self).__init__('{0}: {1}'.format(key, message))
        self.key = key


class ParseError(IpsUncertException):

    """Indicates one or more malformed rows in a sample file.

    `errors` is a list of (row_number, message) pairs, one per rejected row.

    """

    def __init__(self, path, errors):
        lines = ['row {0}: {1}'.format(row, msg) for row, msg in errors]
        super(ParseError, self).__init__(
            '{0}: {1} malformed row(s)\n{2}'.format(path, len(errors),
                                                  '\n'.join(lines)))
        self.path = path
        self.errors = errors


class EmptyBinError(IpsUncertException):

    """Indicates a requested time advance without any usable sample."""

    def __init__(self, advance):
        super(EmptyBinError, self).__init__(
            'empty bin t={0:g}'.format(advance))
        self.advance = advance


class FitError(IpsUncertException):

    """Indicates a sequence that cannot be fitted with the chosen options."""


class NumericalError(IpsUncertException):

    """Indicates that a numerical procedure failed."""
