from django.conf import settings  # noqa: F401
from appconf import AppConf


class CorpusConf(AppConf):
    MAX_SENTENCE_LENGTH = 256
    DEV_RATIO = 0.1
    SPLIT_SEED = 7

    class Meta:
        prefix = 'corpus'
