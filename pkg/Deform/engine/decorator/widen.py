import logging
from functools import wraps

from Deform.engine.exception import ErrorType, DeformException


def widenOnTruncation(maxRetries: int = 3, growthFactor: int = 2):
    """
    절단 오류가 발생하면 `dim` 키워드를 늘려서 다시 계산합니다.

    Parameters:
        maxRetries: 최대 시도 횟수
        growthFactor: 재시도마다 곱할 차원 배율
    """

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            dim = kwargs.get("dim")
            lastException = None
            for attempt in range(maxRetries):
                try:
                    return func(*args, **kwargs)
                except DeformException as e:
                    lastException = e
                    if (
                        e.type != ErrorType.TRUNCATION_ERROR
                        or dim is None
                        or attempt == maxRetries - 1
                    ):
                        raise

                    dim *= growthFactor
                    kwargs["dim"] = dim
                    logging.getLogger("deform").info(
                        "절단 차원 확장", extra={"dim": dim, "attempt": attempt + 1}
                    )
            raise DeformException(errorType=ErrorType.TRUNCATION_ERROR) from lastException

        return wrapper

    return decorator
