import pandas as pd

from Deform.management.base import DeformCommand
from Deform.serializer import MapConfigSerializer, MapResponseSerializer


class Command(DeformCommand):
    help = "비조화 진동자 파라미터를 n에 의존하는 q-진동자 파라미터로 옮깁니다."

    serializer_class = MapConfigSerializer
    flags = ("omega1", "omega2", "n", "j_max", "out", "format")

    def compute(self, config: dict) -> tuple:
        isoMap, residuals = self.engine.mapParameters(
            config["omega1"], config["omega2"], config["n"], config["j_max"]
        )
        record = MapResponseSerializer({**vars(isoMap), "residuals": residuals}).data
        record = {**record, "residuals": dict(record["residuals"])}

        diagnostics = {"source": isoMap.source.toDict()}
        if config["format"] == "csv":
            row = {key: value for key, value in record.items() if key != "residuals"}
            row.update(
                {f"residual_{name}": value for name, value in residuals.items()}
            )
            return pd.DataFrame([row]), diagnostics, 0
        return record, diagnostics, 0
