from Deform.management.base import DeformCommand
from Deform.serializer import CheckRecordSerializer, VerifyConfigSerializer


class Command(DeformCommand):
    help = "검증 묶음을 실행하고 항목별 잔차 보고서를 출력합니다."

    serializer_class = VerifyConfigSerializer
    flags = ("suite", "dim", "out", "format")

    def compute(self, config: dict) -> tuple:
        records = self.engine.verify(config["suite"], config["dim"])
        report = CheckRecordSerializer(records, many=True).data

        failed = [record.checkId for record in records if not record.passed]
        diagnostics = {"checks": len(records), "failed": failed}
        return [dict(item) for item in report], diagnostics, 1 if failed else 0
