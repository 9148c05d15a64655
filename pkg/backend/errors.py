# errors.py - exception hierarchy shared by every workbench module


class WorkbenchError(Exception):
    """Base class for all input and construction errors"""


class ParseError(WorkbenchError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class ArityError(WorkbenchError):
    pass


class CaptureError(WorkbenchError):
    """Substitution of a term whose variables would be captured"""


class EvaluationError(WorkbenchError):
    pass


class DecodeError(WorkbenchError):
    pass


class SchemaError(WorkbenchError):
    pass


class RegistryError(WorkbenchError):
    pass


class DiagonalError(WorkbenchError):
    pass


class ProofFormatError(WorkbenchError):
    pass


class FrameError(WorkbenchError):
    pass


class FragmentError(WorkbenchError):
    pass


class ProofRejected(WorkbenchError):
    """A proof required as input did not check"""

    def __init__(self, message, verdict=None):
        self.verdict = verdict
        super().__init__(message)


class ScriptError(WorkbenchError):
    pass
