import json
import logging
import math
import time
from pathlib import Path

import numpy as np
import pandas as pd
from django.core.management.base import BaseCommand, CommandError

from Deform.engine import Engine
from Deform.engine.exception import DeformException, ErrorType

# 명령 공통 플래그 (dest -> (플래그, argparse 옵션))
OPTIONS = {
    "model": ("--model", {"choices": ["qosc", "anharmonic"]}),
    "q": ("--q", {"type": float}),
    "omega": ("--omega", {"type": float}),
    "omega1": ("--omega1", {"type": float}),
    "omega2": ("--omega2", {"type": float}),
    "alpha_re": ("--alpha-re", {"type": float}),
    "alpha_im": ("--alpha-im", {"type": float}),
    "n": ("--n", {"type": int}),
    "m": ("--m", {"type": int}),
    "tau_max": ("--tau-max", {"type": float}),
    "steps": ("--steps", {"type": int}),
    "dim": ("--dim", {"type": int}),
    "tol": ("--tol", {"type": float}),
    "out": ("--out", {}),
    "format": ("--format", {}),
    "method": ("--method", {}),
    "suite": ("--suite", {}),
    "j_max": ("--j-max", {"type": int}),
    "j_col": ("--j-col", {"type": int}),
    "pairs": ("--pairs", {"help": "n:m 목록, 예) 1:0,2:1"}),
    "target": ("--target", {}),
    "ratios": ("--ratios", {"help": "ω₁/ω₂ 목록, 예) 1,5,10"}),
    "ns": ("--ns", {}),
    "qs": ("--qs", {}),
    "alphas": ("--alphas", {}),
    "xs": ("--xs", {}),
}


def _jsonDefault(value):
    if isinstance(value, np.generic):
        return value.item()
    return str(value)


def _cleanValue(value):
    if isinstance(value, float) and math.isnan(value):
        return None
    if isinstance(value, np.generic):
        return _cleanValue(value.item())
    return value


class DeformCommand(BaseCommand):
    """
    설정 병합, 검증, 출력, 오류 처리를 담당하는 명령 기반 클래스입니다.

    하위 클래스는 serializer_class, flags, compute()를 정의합니다.
    """

    serializer_class = None
    flags: tuple = ()

    def add_arguments(self, parser):
        for name in self.flags:
            flag, kwargs = OPTIONS[name]
            parser.add_argument(flag, dest=name, default=None, **kwargs)
        parser.add_argument(
            "--config", dest="config", default=None, help="JSON 설정 파일 경로"
        )

    def handle(self, *args, **options):
        startTime = time.perf_counter()
        status = 0
        try:
            config, echo = self.resolveConfig(options)
            self.engine = Engine()
            output, diagnostics, status = self.compute(config)
            self.emit(output, config, echo, diagnostics)

        except DeformException as e:
            status = e.type.exitStatus
            e.logError()
            self.stderr.write(e.record())
            raise CommandError(e.message, returncode=status) from e

        except Exception as e:
            status = ErrorType.SYSTEM_ERROR.exitStatus
            error = DeformException(errorType=ErrorType.SYSTEM_ERROR, message=str(e))
            error.logError()
            self.stderr.write(error.record())
            raise CommandError(error.message, returncode=status) from e

        finally:
            elapsedTime = (time.perf_counter() - startTime) * 1000
            logging.getLogger("performance").info(
                "Command Completed",
                extra={
                    "command": self.commandName,
                    "time": elapsedTime,
                    "status": status,
                },
            )

        if status:
            raise CommandError(
                ErrorType.VERIFICATION_FAILURE.message, returncode=status
            )

    @property
    def commandName(self) -> str:
        return self.__module__.rsplit(".", 1)[-1]

    def compute(self, config: dict) -> tuple:
        """
        명령별 계산을 수행합니다.

        Returns:
            output: DataFrame 또는 JSON 직렬화 가능한 객체
            diagnostics: 사이드카에 기록할 진단 정보
            status: 종료 상태
        """
        raise NotImplementedError

    def resolveConfig(self, options: dict) -> tuple[dict, dict]:
        """
        설정 파일과 플래그를 병합하고 검증합니다. (플래그 우선)

        설정 파일은 옵션 이름의 평면 객체 또는 이전 실행의 사이드카입니다.

        Returns:
            config: 검증된 설정
            echo: 사이드카에 기록할 전체 설정
        """
        fileConfig = {}
        if options.get("config"):
            try:
                fileConfig = json.loads(Path(options["config"]).read_text())
            except (OSError, ValueError) as e:
                raise DeformException(
                    errorType=ErrorType.CONFIG_ERROR,
                    message="설정 파일을 읽을 수 없습니다.",
                    params={"config": options["config"]},
                ) from e
            if not isinstance(fileConfig, dict):
                raise DeformException(
                    errorType=ErrorType.CONFIG_ERROR,
                    message="설정 파일은 JSON 객체여야 합니다.",
                )
            if "command" in fileConfig and isinstance(fileConfig.get("config"), dict):
                fileConfig = fileConfig["config"]

        flags = {
            name: options[name]
            for name in self.flags
            if options.get(name) is not None
        }
        serializer = self.serializer_class(data={**fileConfig, **flags})
        if not serializer.is_valid():
            raise DeformException(
                errorType=ErrorType.CONFIG_ERROR,
                params=json.loads(json.dumps(serializer.errors, default=str)),
            )
        return dict(serializer.validated_data), dict(serializer.data)

    def emit(self, output, config: dict, echo: dict, diagnostics: dict):
        """
        데이터를 출력하고 --out이 있으면 <out>.meta.json 사이드카를 씁니다.
        """
        text = self.render(output, config["format"])
        out = config.get("out")
        if not out:
            self.stdout.write(text, ending="")
            return

        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)

        sidecar = {
            "command": self.commandName,
            "config": echo,
            "diagnostics": diagnostics,
        }
        Path(f"{out}.meta.json").write_text(
            json.dumps(sidecar, sort_keys=True, indent=2, default=_jsonDefault) + "\n"
        )
        logging.getLogger("deform").info(
            "출력 완료", extra={"out": out, "command": self.commandName}
        )

    @staticmethod
    def render(output, format: str) -> str:
        if isinstance(output, pd.DataFrame):
            if format == "csv":
                return output.to_csv(index=False, lineterminator="\n")
            rows = [
                {key: _cleanValue(value) for key, value in row.items()}
                for row in output.to_dict(orient="records")
            ]
            output = rows
        return json.dumps(output, indent=2, default=_jsonDefault) + "\n"
