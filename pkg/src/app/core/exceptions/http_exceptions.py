from http import HTTPStatus
from typing import Any

from fastapi import HTTPException, status


class CustomException(HTTPException):
    def __init__(self, status_code: int = status.HTTP_500_INTERNAL_SERVER_ERROR, detail: Any | None = None) -> None:
        if not detail:
            detail = HTTPStatus(status_code).description
        super().__init__(status_code=status_code, detail=detail)


class BadRequestException(CustomException):
    def __init__(self, detail: Any | None = None) -> None:
        super().__init__(status_code=status.HTTP_400_BAD_REQUEST, detail=detail)


class UnprocessableEntityException(CustomException):
    def __init__(self, detail: Any | None = None) -> None:
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)


class ServiceUnavailableException(CustomException):
    def __init__(self, detail: Any | None = None) -> None:
        super().__init__(status_code=status.HTTP_503_SERVICE_UNAVAILABLE, detail=detail)


class DuplicateValueException(CustomException):
    def __init__(self, detail: Any | None = None) -> None:
        super().__init__(status_code=status.HTTP_409_CONFLICT, detail=detail)
