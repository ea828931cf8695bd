import logging
import os
import sys
import traceback


class FailureHandler(logging.Handler):
    """
    엔진 실패를 로그 파일에 남깁니다. (오류 유형, 파라미터, traceback 포함)
    """

    def __init__(self, logPath: str):
        super().__init__()
        self.logPath = logPath

        os.makedirs(os.path.dirname(self.logPath) or ".", exist_ok=True)
        self.fileHandler = logging.FileHandler(self.logPath, delay=True)

    def emit(self, record: logging.LogRecord):
        excInfo = record.exc_info
        record.exc_info = None

        details = []
        if hasattr(record, "type") and record.type:
            details.append("Type: " + str(record.type))
        if hasattr(record, "params") and record.params:
            details.append("Params: " + str(record.params))

        if excInfo and excInfo[0] is not None:
            details.append("".join(traceback.format_exception(*excInfo)))

        record.msg = f"{record.getMessage()}\n" + "\n".join(details)
        record.args = None

        self.fileHandler.setFormatter(self.formatter)
        self.fileHandler.emit(record=record)

    def close(self):
        self.fileHandler.close()
        super().close()


class PerformanceHandler(logging.Handler):
    """
    명령 실행 시간을 등급과 함께 표준 오류로 출력합니다.
    """

    def __init__(self, slowMs: int = 5000, verySlowMs: int = 30000):
        super().__init__()
        self.slowMs = slowMs
        self.verySlowMs = verySlowMs

    def emit(self, record: logging.LogRecord):
        if hasattr(record, "time"):
            time = int(record.time)
            if time > self.verySlowMs:
                grade = "very slow"
            elif time > self.slowMs:
                grade = "slow"
            else:
                grade = "fast"
        else:
            time = None
            grade = "unknown"

        fields = [self.format(record)]
        if hasattr(record, "command"):
            fields.append(f"command={record.command}")
        if hasattr(record, "status"):
            fields.append(f"status={record.status}")
        if time is not None:
            fields.append(f"time={time}ms")
        fields.append(f"grade={grade}")

        sys.stderr.write(" ".join(fields) + "\n")
