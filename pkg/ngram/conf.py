from django.conf import settings  # noqa: F401
from appconf import AppConf


class NgramConf(AppConf):
    MAX_LENGTH = 5
    MIN_FREQUENCY = 5
    AV_THRESHOLD = 2
    SHARD_SIZE = 2000

    class Meta:
        prefix = 'ngram'
