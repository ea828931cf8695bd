from rest_framework import serializers


class IsoResidualSerializer(serializers.Serializer):
    inverse = serializers.FloatField()
    zFactor = serializers.FloatField()
    table = serializers.FloatField()
    function = serializers.FloatField()
    closure = serializers.FloatField()


class MapResponseSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    q = serializers.FloatField(source="qOfN")
    omega_q = serializers.FloatField(source="omegaQ")
    p_n = serializers.FloatField(source="pN")
    residuals = IsoResidualSerializer()
