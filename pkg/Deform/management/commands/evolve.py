import numpy as np
import pandas as pd

from Deform.engine import Engine
from Deform.engine.parts import LambdaIndex, Utils
from Deform.management.base import DeformCommand
from Deform.serializer import EvolveConfigSerializer


class Command(DeformCommand):
    help = "초기 결맞음 상태에서 <Λ^{n,m}> 시계열을 계산합니다."

    serializer_class = EvolveConfigSerializer
    flags = (
        "model",
        "q",
        "omega",
        "omega1",
        "omega2",
        "alpha_re",
        "alpha_im",
        "n",
        "m",
        "tau_max",
        "steps",
        "dim",
        "tol",
        "out",
        "format",
        "method",
    )

    def compute(self, config: dict) -> tuple:
        params = Engine.buildModel(config)
        idx = LambdaIndex(config["n"], config["m"])
        times = Utils.timeGrid(config["tau_max"], config["steps"])
        alpha = complex(config["alpha_re"], config["alpha_im"])

        series = self.engine.evolve(
            params,
            alpha,
            idx,
            times,
            method=config["method"],
            tol=config["tol"],
            dim=config["dim"],
        )

        values = series.values
        frame = pd.DataFrame(
            {
                series.timeLabel: series.times,
                "re": values.real,
                "im": values.imag,
                "abs": np.abs(values),
                "arg": np.angle(values),
            }
        )
        diagnostics = {
            "model": params.toDict(),
            "points": len(series.times),
            "truncation_tail": series.truncationTail,
            **self.engine.stateDiagnostics(params, alpha, idx, config["tol"]),
        }
        return frame, diagnostics, 0
