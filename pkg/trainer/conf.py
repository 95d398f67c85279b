from django.conf import settings  # noqa: F401
from appconf import AppConf


class TrainerConf(AppConf):
    LEARNING_RATE = 0.05
    BATCH_SIZE = 16
    EPOCHS = 30
    CLIP_NORM = 5.0
    SEED = 1
    PATIENCE = 5
    OPTIMIZER = 'sgd'
    DECAY = 0.0
    WORKERS = 1
    OUTPUT_DIR = 'runs'
    CONSTRAIN_LEGAL = True
    USE_HGN = True
    DECODE_BATCH_SIZE = 32
    GRAD_CHECK_EPSILON = 1e-4
    GRAD_CHECK_SAMPLES = 20
    GRAD_CHECK_SENTENCES = 3

    class Meta:
        prefix = 'trainer'
