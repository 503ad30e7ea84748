##
class PyAdamsError(ValueError):
    """Base class of every error the engine raises on purpose."""


class ValidationError(PyAdamsError):
    pass


class NotAComplexError(ValidationError):
    def __init__(self, message, *, degree=None):
        super().__init__(message)
        self.degree = degree


class NotEquivariantError(ValidationError):
    pass


class NotDualisableError(PyAdamsError):
    pass


class ConfigurationMismatchError(PyAdamsError):
    pass


class ConfigError(PyAdamsError):
    pass


class ResolutionError(PyAdamsError):
    pass


class WitnessFailure(PyAdamsError):
    pass


class InputError(PyAdamsError):
    """
    Malformed input file.

    `path` is a position inside the input: either a JSON path such as
    `$.levels[2].psi[0][1]`, or `line:column` for JSON syntax errors.
    """

    def __init__(self, message, *, path=None, file=None):
        self.path = path
        self.file = file

        where = ""
        if file:
            where += f"{file}:"
        if path:
            where += f"{path}:"
        if where:
            message = f"{where} {message}"

        super().__init__(message)


##
