import os
from pathlib import Path
from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent.parent

load_dotenv()

SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "graphseg-local-only")

DEBUG = os.getenv("DJANGO_DEBUG", "") == "1"

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'corpus.apps.CorpusConfig',
    'ngram.apps.NgramConfig',
    'parses.apps.ParsesConfig',
    'graph.apps.SegmentationGraphConfig',
    'network.apps.NetworkConfig',
    'trainer.apps.TrainerConfig',
    'evaluation.apps.EvaluationConfig',
]

MIDDLEWARE = []

# Nothing is persisted in a database: corpora, vocabularies and checkpoints
# are plain files.
DATABASES = {}

REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
