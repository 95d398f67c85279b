from django.conf import settings  # noqa: F401
from appconf import AppConf


class EvaluationConf(AppConf):
    SEEDS = (1, 2, 3)
    SWEEP_FRACTIONS = (0.2, 0.4, 0.6, 0.8, 1.0)
    SWEEP_MODE = 'retrain'
    SUBSAMPLE_SEED = 13

    class Meta:
        prefix = 'evaluation'
