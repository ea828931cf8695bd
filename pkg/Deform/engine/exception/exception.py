import json
import logging

from Deform.engine.exception import ErrorType

EXCEPT_ERROR_TYPES = (
    ErrorType.CONFIG_ERROR,
    ErrorType.DOMAIN_ERROR,
    ErrorType.CONVERGENCE_ERROR,
    ErrorType.DIMENSION_ERROR,
    ErrorType.INDEX_ERROR,
)


class DeformException(Exception):
    def __init__(
        self,
        errorType: ErrorType,
        message: str | None = None,
        params: dict | None = None,
        *args
    ):
        self.type = errorType
        self.message = message or errorType.message
        self.params = params or None
        super().__init__(self.message, *args)

    def record(self) -> str:
        """
        한 줄짜리 기계 판독용 오류 레코드를 만듭니다.

        Returns:
            record: JSON 문자열
        """
        return json.dumps(
            {
                "error": self.type.name,
                "title": self.type.title,
                "message": self.message,
                "params": self.params,
            },
            ensure_ascii=False,
            sort_keys=True,
            default=str,
        )

    def logError(self):
        if self.type in EXCEPT_ERROR_TYPES:
            return

        logger = logging.getLogger("watchmen")
        logger.error(
            self.message,
            extra={"type": self.type.title, "params": self.params},
            exc_info=True,
        )

    def logWarning(self):
        if self.type in EXCEPT_ERROR_TYPES:
            return

        logger = logging.getLogger("watchmen")
        logger.warning(
            self.message,
            extra={"type": self.type.title, "params": self.params},
            exc_info=True,
        )
