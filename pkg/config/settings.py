"""
Django settings for the moebius project.

The project has no database and serves no HTTP traffic; Django supplies the
settings layer, logging configuration, the ``manage.py moebius`` command and
the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.1/ref/settings/
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Nothing is signed; Django only insists that the value is non-empty.
SECRET_KEY = os.getenv('SECRET_KEY', 'moebius-local-only')

DEBUG = os.getenv('DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'moebius',
]

MIDDLEWARE = []

DATABASES = {}

USE_I18N = False

USE_TZ = True

TIME_ZONE = 'UTC'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Numerical tunables. The CLI flags --blocksize and --cutoff override
# BLOCK_SIZE and EXACT_CUTOFF per run.
MOEBIUS = {
    'BLOCK_SIZE': int(os.getenv('MOEBIUS_BLOCK_SIZE', 2 ** 20)),
    'EXACT_CUTOFF': int(os.getenv('MOEBIUS_EXACT_CUTOFF', 10 ** 4)),
    'IDENTITY_TOLERANCE': 1e-9,
    'SCAN_CHUNK': int(os.getenv('MOEBIUS_SCAN_CHUNK', 2 ** 22)),
    'EULER_GAMMA': 0.5772156649015329,
    'TAIL_CONSTANT_ACCURACY': 1e-10,
    'MAX_REPORTED_VIOLATIONS': 100,
    # verify clips the per-x tail and variation scans and the exhaustive
    # recursion check to these; the recursion is also sampled up to --limit.
    'POINTWISE_SCAN_LIMIT': int(os.getenv('MOEBIUS_POINTWISE_SCAN_LIMIT', 10 ** 5)),
    'RECURSION_SCAN_LIMIT': int(os.getenv('MOEBIUS_RECURSION_SCAN_LIMIT', 10 ** 4)),
    'RECURSION_SAMPLES': int(os.getenv('MOEBIUS_RECURSION_SAMPLES', 100)),
}

# Celery Configuration
# Chunks run in-process unless CELERY_TASK_ALWAYS_EAGER=False and a broker is set.
CELERY_BROKER_URL = os.getenv('CELERY_BROKER_URL', 'memory://')
CELERY_RESULT_BACKEND = os.getenv('CELERY_RESULT_BACKEND', 'cache+memory://')
CELERY_TASK_ALWAYS_EAGER = os.getenv('CELERY_TASK_ALWAYS_EAGER', 'True') == 'True'
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_TASK_DEFAULT_EXCHANGE = 'moebius_exchange'
CELERY_TASK_DEFAULT_EXCHANGE_TYPE = 'topic'
CELERY_TASK_DEFAULT_ROUTING_KEY = 'moebius.default'
CELERY_TASK_CREATE_MISSING_QUEUES = True

CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'moebius': {
            'handlers': ['console'],
            'level': os.getenv('MOEBIUS_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
        'celery': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}
