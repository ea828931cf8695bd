from enum import Enum


class ErrorType(Enum):
    CONFIG_ERROR = (
        "설정 오류",
        "실행 설정이 올바르지 않습니다.",
        2,
    )
    DOMAIN_ERROR = (
        "정의역 오류",
        "파라미터가 허용 범위를 벗어났습니다.",
        2,
    )
    CONVERGENCE_ERROR = (
        "수렴 오류",
        "급수가 수렴 반경을 벗어났습니다.",
        2,
    )
    DIMENSION_ERROR = (
        "차원 오류",
        "Fock 공간 차원이 올바르지 않습니다.",
        2,
    )
    INDEX_ERROR = (
        "인덱스 오류",
        "연산자 인덱스가 절단 차원을 벗어났습니다.",
        2,
    )
    TRUNCATION_ERROR = (
        "절단 오류",
        "주어진 차원에서 꼬리 확률 한계를 만족하지 못했습니다.",
        1,
    )
    ZERO_ELEMENT_ERROR = (
        "영 행렬 원소",
        "위상을 정의할 행렬 원소가 0입니다.",
        1,
    )
    PHASE_UNWRAP_ERROR = (
        "위상 펼침 오류",
        "시간 격자가 너무 성글어 위상을 펼칠 수 없습니다.",
        1,
    )
    VERIFICATION_FAILURE = (
        "검증 실패",
        "허용 오차를 넘는 잔차가 발견되었습니다.",
        1,
    )
    SYSTEM_ERROR = (
        "시스템 오류",
        "시스템에 문제가 발생했습니다.",
        1,
    )

    def __init__(self, title: str, message: str, exitStatus: int):
        self.title = title
        self.message = message
        self.exitStatus = exitStatus
