from rest_framework import serializers


class CheckRecordSerializer(serializers.Serializer):
    check_id = serializers.CharField(source="checkId")
    params = serializers.DictField()
    max_residual = serializers.FloatField(source="maxResidual")
    tolerance = serializers.FloatField()
    passed = serializers.BooleanField()

    def to_representation(self, instance):
        data = super().to_representation(instance)
        data["pass"] = data.pop("passed")
        return data
