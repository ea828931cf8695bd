import asyncio
import itertools
import math

import pandas as pd

from Deform.management.base import DeformCommand
from Deform.serializer import SweepConfigSerializer


class Command(DeformCommand):
    help = "파라미터 격자에 대해 지표를 계산해 긴 형식 표로 출력합니다."

    serializer_class = SweepConfigSerializer
    flags = (
        "target",
        "ratios",
        "ns",
        "qs",
        "alphas",
        "xs",
        "omega",
        "omega2",
        "n",
        "m",
        "j_max",
        "tau_max",
        "steps",
        "tol",
        "out",
        "format",
    )

    @staticmethod
    def buildPoints(config: dict) -> list[dict]:
        """
        대상별 격자점을 입력 순서대로 만듭니다.
        """
        target = config["target"]
        if target in ("isomorphism", "map"):
            axes = {"ratio": config["ratios"], "n": config["ns"]}
        elif target == "oracle":
            axes = {"q": config["qs"], "alpha": config["alphas"]}
        else:
            axes = {"q": config["qs"], "x": config["xs"]}

        names = list(axes)
        return [
            dict(zip(names, values)) for values in itertools.product(*axes.values())
        ]

    def compute(self, config: dict) -> tuple:
        points = self.buildPoints(config)
        results = asyncio.run(self.engine.sweep(config["target"], points, config))

        rows = []
        failed = 0
        for point, result in results:
            label = ";".join(f"{key}={value}" for key, value in point.items())
            if isinstance(result, Exception):
                failed += 1
                rows.append(
                    {
                        "point": label,
                        "metric": "error",
                        "value": math.nan,
                        "error": result.type.name,
                    }
                )
                continue
            for metric, value in result:
                rows.append(
                    {"point": label, "metric": metric, "value": value, "error": ""}
                )

        frame = pd.DataFrame(rows, columns=["point", "metric", "value", "error"])
        diagnostics = {"points": len(points), "failed_points": failed}
        return frame, diagnostics, 0
