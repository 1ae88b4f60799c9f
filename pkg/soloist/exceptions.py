# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt


class SoloistError(Exception):
    pass


class FormulaSyntaxError(SoloistError):
    def __init__(self, message, position=None):
        if position is not None:
            message = "{} (at position {})".format(message, position)
        super().__init__(message)
        self.position = position


class FormulaArityError(SoloistError):
    pass


class EmptyIntervalError(SoloistError):
    pass


class InvalidBoundsError(SoloistError):
    pass


class NotCoreFormulaError(SoloistError):
    pass


class TraceFormatError(SoloistError):
    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = "line {}: {}".format(line_number, message)
        super().__init__(message)
        self.line_number = line_number


class TraceValidationError(SoloistError):
    pass


class GeneratorParameterError(SoloistError):
    pass


class ReducerNotRegistered(SoloistError):
    pass


class ReducerAlreadyRegistered(SoloistError):
    pass


class AlternationError(SoloistError):
    pass


class AlternationWarning(UserWarning):
    pass
