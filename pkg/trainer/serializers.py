from rest_framework import serializers
from rest_framework.exceptions import ValidationError

from graph.models import CWN_DIRECTIONS, RELATION_GROUPINGS, GraphConfig
from trainer.models import OPTIMIZERS, TrainConfig
from trainer.validators import validate_graph_config, validate_train_config


class GraphConfigSerializer(serializers.Serializer):
    use_syntax_subgraph = serializers.BooleanField(default=True)
    use_cwn_subgraph = serializers.BooleanField(default=True)
    use_lexicon = serializers.BooleanField(default=True)
    use_ngrams = serializers.BooleanField(default=True)
    cwn_direction = serializers.ChoiceField(choices=CWN_DIRECTIONS, default='forward')
    relation_grouping = serializers.ChoiceField(choices=RELATION_GROUPINGS, default='combined')

    def validate(self, data):
        errors = validate_graph_config(data)
        if errors:
            raise ValidationError({'errors': errors})
        return data

    def create(self, validated_data):
        return GraphConfig(**validated_data)


class TrainConfigSerializer(serializers.Serializer):
    learning_rate = serializers.FloatField(default=0.05)
    batch_size = serializers.IntegerField(min_value=1, default=16)
    epochs = serializers.IntegerField(min_value=1, default=30)
    clip_norm = serializers.FloatField(default=5.0)
    seed = serializers.IntegerField(min_value=0, default=1)
    patience = serializers.IntegerField(min_value=1, default=5)
    optimizer = serializers.ChoiceField(choices=OPTIMIZERS, default='sgd')
    decay = serializers.FloatField(default=0.0)
    char_dim = serializers.IntegerField(min_value=1, default=64)
    hidden_dim = serializers.IntegerField(min_value=1, default=64)
    layers = serializers.IntegerField(min_value=1, default=2)
    use_hgn = serializers.BooleanField(default=True)
    dev_ratio = serializers.FloatField(default=0.1)
    max_sentence_length = serializers.IntegerField(min_value=1, allow_null=True, default=256)
    workers = serializers.IntegerField(min_value=1, default=1)
    constrain_legal = serializers.BooleanField(default=True)
    graph = GraphConfigSerializer(default=dict)

    def validate(self, data):
        errors = validate_train_config(data)
        if errors:
            raise ValidationError({'errors': errors})
        return data

    def create(self, validated_data):
        data = dict(validated_data)
        graph = GraphConfig(**data.pop('graph'))
        return TrainConfig(graph=graph, **data)


def train_config(data):
    """Validated TrainConfig from a plain dict; raises ValidationError."""
    serializer = TrainConfigSerializer(data=data)
    serializer.is_valid(raise_exception=True)
    return serializer.save()


class ConfigRecordSerializer(serializers.Serializer):
    kind = serializers.CharField(default='config')
    config = serializers.DictField()
    effective = serializers.DictField(required=False)


class EpochRecordSerializer(serializers.Serializer):
    kind = serializers.CharField(default='epoch')
    epoch = serializers.IntegerField()
    step = serializers.IntegerField()
    loss = serializers.FloatField()
    learning_rate = serializers.FloatField()
    dev_precision = serializers.FloatField()
    dev_recall = serializers.FloatField()
    dev_f1 = serializers.FloatField()
    dev_oov_recall = serializers.FloatField()
    dev_oov_degenerate = serializers.BooleanField()
    best = serializers.BooleanField()


class GradCheckRecordSerializer(serializers.Serializer):
    tensor = serializers.CharField()
    coordinates = serializers.IntegerField()
    relative_error = serializers.FloatField()
