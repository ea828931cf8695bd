import numpy as np
import pandas as pd

from Deform.engine.parts import LambdaIndex, QOsc, Utils
from Deform.management.base import DeformCommand
from Deform.serializer import CollapseConfigSerializer


class Command(DeformCommand):
    help = "(n, m) 위상 곡선을 [n]_q로 정규화한 붕괴 데이터를 만듭니다."

    serializer_class = CollapseConfigSerializer
    flags = ("q", "omega", "pairs", "j_col", "tau_max", "steps", "dim", "out", "format")

    def compute(self, config: dict) -> tuple:
        params = QOsc(q=config["q"], omegaQ=config["omega"])
        pairs = [LambdaIndex(n, m) for n, m in config["pairs"]]
        times = Utils.timeGrid(config["tau_max"], config["steps"])

        curves, deviation = self.engine.collapse(
            params, pairs, config["j_col"], times, config["dim"]
        )

        frame = pd.DataFrame({"tau": times})
        for curve in curves:
            frame[curve.label] = curve.phases

        # 마지막 행: 최대 쌍별 편차
        summary = {"tau": "max_pairwise_deviation"}
        if curves:
            summary[curves[0].label] = deviation
        frame = pd.concat(
            [frame.astype(object), pd.DataFrame([summary], columns=frame.columns)],
            ignore_index=True,
        )

        slope = config["q"] ** config["j_col"]
        diagnostics = {
            "curves": [curve.label for curve in curves],
            "max_pairwise_deviation": deviation,
            "max_reference_deviation": max(
                float(np.max(np.abs(curve.phases - times * slope))) for curve in curves
            ),
            "reference_slope": slope,
        }
        return frame, diagnostics, 0
