from django.conf import settings  # noqa: F401
from appconf import AppConf


class GraphConf(AppConf):
    CWN_DIRECTION = 'forward'
    RELATION_GROUPING = 'combined'
    MIN_MATCH_LENGTH = 2

    class Meta:
        prefix = 'graph'
