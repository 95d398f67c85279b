from rest_framework import serializers
from rest_framework.exceptions import ValidationError

from evaluation.services.experiments import GRIDS
from evaluation.validators import validate_seeds, validate_sweep

SWEEP_MODES = ('retrain', 'reinfer')


class MetricsSerializer(serializers.Serializer):
    precision = serializers.FloatField()
    recall = serializers.FloatField()
    f1 = serializers.FloatField()
    oov_recall = serializers.FloatField()
    oov_degenerate = serializers.BooleanField()
    gold = serializers.IntegerField()
    predicted = serializers.IntegerField()
    correct = serializers.IntegerField()
    oov_gold = serializers.IntegerField()
    oov_correct = serializers.IntegerField()


class EvaluationRecordSerializer(MetricsSerializer):
    kind = serializers.CharField(default='evaluation')
    gold_path = serializers.CharField()
    predicted_path = serializers.CharField(allow_null=True, required=False)
    model_path = serializers.CharField(allow_null=True, required=False)


class AblationParamsSerializer(serializers.Serializer):
    grid = serializers.ChoiceField(choices=GRIDS)
    seeds = serializers.ListField(child=serializers.IntegerField(min_value=0))

    def validate(self, data):
        errors = validate_seeds(data)
        if errors:
            raise ValidationError({'errors': errors})
        return data


class AblationRowSerializer(serializers.Serializer):
    kind = serializers.CharField(default='ablation')
    config = serializers.CharField()
    seeds = serializers.ListField(child=serializers.IntegerField())
    f1 = serializers.FloatField()
    oov_recall = serializers.FloatField()
    runs = serializers.ListField(child=serializers.DictField())
    graph_stats = serializers.DictField()


class SweepParamsSerializer(serializers.Serializer):
    fractions = serializers.ListField(child=serializers.FloatField())
    seeds = serializers.ListField(child=serializers.IntegerField(min_value=0))
    mode = serializers.ChoiceField(choices=SWEEP_MODES)

    def validate(self, data):
        errors = validate_sweep(data)
        if errors:
            raise ValidationError({'errors': errors})
        return data


class SweepRowSerializer(serializers.Serializer):
    kind = serializers.CharField(default='sweep')
    fraction = serializers.FloatField()
    vocab_size = serializers.IntegerField()
    f1 = serializers.FloatField()
    oov_recall = serializers.FloatField()
    runs = serializers.ListField(child=serializers.DictField())
