from app.constants.error_codes import ErrorCode


class AppException(Exception):
    def __init__(
        self,
        exit_code: int,
        message: str,
        error_code: ErrorCode,
        details: dict | None = None,
    ):
        super().__init__(message)
        self.exit_code = exit_code
        self.message = message
        self.error_code = error_code
        self.details = details
