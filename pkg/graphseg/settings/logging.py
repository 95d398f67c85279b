import os

LOG_LEVEL = os.getenv("GRAPHSEG_LOG_LEVEL", "INFO").upper()

# stdout carries data, so every handler writes to stderr.
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'root': {
        'handlers': ['stderr'],
        'level': LOG_LEVEL,
    },
    'loggers': {
        'django': {
            'handlers': ['stderr'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}
