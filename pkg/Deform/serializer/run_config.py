from rest_framework import serializers

from Deform.engine.parts.constants import (
    DEFAULT_ALPHA,
    DEFAULT_DIM,
    DEFAULT_STEPS,
    DEFAULT_TAU_MAX,
    DEFAULT_TOL,
    ISO_DEPTH,
)
from Deform.engine.parts.suites import SUITES


class CommaListField(serializers.ListField):
    """
    "1,2,3" 형태의 문자열도 목록으로 받습니다.
    """

    def to_internal_value(self, data):
        if isinstance(data, str):
            data = [item.strip() for item in data.split(",") if item.strip()]
        return super().to_internal_value(data)


class ModelConfigSerializer(serializers.Serializer):
    model = serializers.ChoiceField(
        label="모형",
        choices=["qosc", "anharmonic"],
        default="qosc",
        error_messages={"invalid_choice": "모형은 qosc 또는 anharmonic 이어야 합니다."},
    )
    q = serializers.FloatField(label="변형 파라미터", default=1.2)
    omega = serializers.FloatField(label="ω_q", default=1.0)
    omega1 = serializers.FloatField(label="ω₁", default=10.0)
    omega2 = serializers.FloatField(label="ω₂", default=1.0)


class GridConfigSerializer(serializers.Serializer):
    tau_max = serializers.FloatField(label="마지막 시각", default=DEFAULT_TAU_MAX, min_value=0.0)
    steps = serializers.IntegerField(label="격자점 개수", default=DEFAULT_STEPS, min_value=1)
    dim = serializers.IntegerField(label="Fock 차원", default=DEFAULT_DIM, min_value=2)


class OutputConfigSerializer(serializers.Serializer):
    out = serializers.CharField(label="출력 경로", default=None, allow_null=True)
    format = serializers.ChoiceField(
        label="출력 형식",
        choices=["csv", "json"],
        default="csv",
        error_messages={"invalid_choice": "출력 형식은 csv 또는 json 이어야 합니다."},
    )


class EvolveConfigSerializer(
    ModelConfigSerializer, GridConfigSerializer, OutputConfigSerializer
):
    alpha_re = serializers.FloatField(label="Re α", default=DEFAULT_ALPHA)
    alpha_im = serializers.FloatField(label="Im α", default=0.0)
    n = serializers.IntegerField(label="n", default=1, min_value=0)
    m = serializers.IntegerField(label="m", default=0, min_value=0)
    tol = serializers.FloatField(label="꼬리 허용치", default=DEFAULT_TOL)
    method = serializers.ChoiceField(
        label="계산 방식",
        choices=["series", "closed", "normal-order", "oracle"],
        default="series",
    )

    def validate_tol(self, value):
        if not value > 0:
            raise serializers.ValidationError("허용치는 0보다 커야 합니다.")
        return value

    def validate(self, data):
        if data["method"] == "closed" and data["model"] != "anharmonic":
            raise serializers.ValidationError(
                {"method": "닫힌 형태는 anharmonic 모형에서만 사용할 수 있습니다."}
            )
        if data["method"] == "normal-order" and data["model"] != "qosc":
            raise serializers.ValidationError(
                {"method": "정규순서 계산은 qosc 모형에서만 사용할 수 있습니다."}
            )
        return data


class VerifyConfigSerializer(serializers.Serializer):
    suite = serializers.ChoiceField(
        label="검증 묶음",
        choices=[*SUITES, "all"],
        default="all",
        error_messages={"invalid_choice": "알 수 없는 검증 묶음입니다."},
    )
    dim = serializers.IntegerField(label="Fock 차원", default=DEFAULT_DIM, min_value=8)
    out = serializers.CharField(label="출력 경로", default=None, allow_null=True)
    format = serializers.ChoiceField(label="출력 형식", choices=["json"], default="json")


class MapConfigSerializer(OutputConfigSerializer):
    omega1 = serializers.FloatField(label="ω₁", default=10.0)
    omega2 = serializers.FloatField(label="ω₂", default=1.0)
    n = serializers.IntegerField(label="n", default=1)
    j_max = serializers.IntegerField(label="최대 교환자 깊이", default=ISO_DEPTH, min_value=0)
    format = serializers.ChoiceField(label="출력 형식", choices=["csv", "json"], default="json")


class CollapseConfigSerializer(GridConfigSerializer, OutputConfigSerializer):
    q = serializers.FloatField(label="변형 파라미터", default=1.2)
    omega = serializers.FloatField(label="ω_q", default=1.0)
    pairs = CommaListField(
        label="(n, m) 목록",
        child=serializers.RegexField(r"^\d+:\d+$"),
        default=["1:0", "2:0", "3:0"],
        allow_empty=False,
    )
    j_col = serializers.IntegerField(label="열", default=0, min_value=0)

    def validate_pairs(self, value):
        return [tuple(int(part) for part in pair.split(":")) for pair in value]

    def to_representation(self, instance):
        data = super().to_representation(instance)
        data["pairs"] = [f"{n}:{m}" for n, m in instance["pairs"]]
        return data


class SweepConfigSerializer(OutputConfigSerializer):
    target = serializers.ChoiceField(
        label="스윕 대상",
        choices=["isomorphism", "map", "oracle", "relation"],
        default="isomorphism",
    )
    ratios = CommaListField(child=serializers.FloatField(), default=[1.0, 5.0, 10.0, 100.0])
    ns = CommaListField(child=serializers.IntegerField(), default=[1, 2, 3, 4])
    qs = CommaListField(child=serializers.FloatField(), default=[1.2])
    alphas = CommaListField(child=serializers.FloatField(), default=[DEFAULT_ALPHA])
    xs = CommaListField(child=serializers.FloatField(), default=[0.1, 0.5, 1.0, 2.0])
    omega = serializers.FloatField(label="ω_q", default=1.0)
    omega2 = serializers.FloatField(label="ω₂", default=1.0)
    n = serializers.IntegerField(label="n", default=1, min_value=0)
    m = serializers.IntegerField(label="m", default=0, min_value=0)
    j_max = serializers.IntegerField(label="최대 교환자 깊이", default=ISO_DEPTH, min_value=0)
    tau_max = serializers.FloatField(label="마지막 시각", default=DEFAULT_TAU_MAX, min_value=0.0)
    steps = serializers.IntegerField(label="격자점 개수", default=DEFAULT_STEPS, min_value=1)
    tol = serializers.FloatField(label="꼬리 허용치", default=DEFAULT_TOL)
