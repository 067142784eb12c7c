from typing import Any


class AnnulusQuiverException(Exception):
    pass


class InvalidConfigError(AnnulusQuiverException):
    def __init__(self, message: str, field: str, value: Any = None) -> None:
        self.message = message
        self.field = field
        self.value = value

        super().__init__(message)


class InvalidArcError(AnnulusQuiverException):
    def __init__(self, message: str, arc_text: str) -> None:
        self.message = message
        self.arc_text = arc_text

        super().__init__(message)


class NotAdmissibleError(AnnulusQuiverException):
    def __init__(self, message: str, arc_text: str) -> None:
        self.message = message
        self.arc_text = arc_text

        super().__init__(message)


class MoveError(AnnulusQuiverException):
    def __init__(self, message: str, source_text: str, target_text: str | None = None) -> None:
        self.message = message
        self.source_text = source_text
        self.target_text = target_text

        super().__init__(message)


class UnknownVertexError(AnnulusQuiverException):
    def __init__(self, message: str, key_text: str) -> None:
        self.message = message
        self.key_text = key_text

        super().__init__(message)


class InconsistentModelError(AnnulusQuiverException):
    def __init__(self, message: str, witness: str) -> None:
        self.message = message
        self.witness = witness

        super().__init__(message)


class InvalidDocumentError(AnnulusQuiverException):
    def __init__(self, message: str, detail: str = '') -> None:
        self.message = message
        self.detail = detail

        super().__init__(message)
