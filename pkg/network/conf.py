from django.conf import settings  # noqa: F401
from appconf import AppConf


class NetworkConf(AppConf):
    CHAR_DIM = 64
    HIDDEN_DIM = 64
    LAYERS = 2
    INIT_RANGE = 0.1
    MIN_CHAR_COUNT = 1

    class Meta:
        prefix = 'network'
