"""
Django settings for the LSD bandit toolkit.

The project has no database and serves no HTTP traffic: Django provides the
settings layer, the management-command CLI and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.1/ref/settings/
"""

from pathlib import Path
import os

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'changeme')

DEBUG = bool(int(os.environ.get('DEBUG', 0)))


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'core',
    'blocks',
    'ilp',
    'lp',
    'bnb',
    'algos',
    'harness',
]

# Experiments write files, nothing is stored in a database.
DATABASES = {}

USE_TZ = True


# Logging

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': os.environ.get('LSD_LOG_LEVEL', 'WARNING'),
    },
}


# Toolkit defaults

LSD_BANDITS = {
    # Exploration parameter of the UCB learners.
    'ALPHA': float(os.environ.get('LSD_ALPHA', 1.5)),
    # Largest K**d (or K**T) the brute-force oracles agree to enumerate.
    'ENUMERATION_CAP': int(os.environ.get('LSD_ENUMERATION_CAP', 10 ** 7)),
    'LP_TOLERANCE': 1e-9,
    'INTEGRALITY_TOLERANCE': 1e-6,
    'LP_MAX_ITERATIONS': int(os.environ.get('LSD_LP_MAX_ITERATIONS', 100000)),
    'HORIZON': int(os.environ.get('LSD_HORIZON', 40000)),
    'REPETITIONS': int(os.environ.get('LSD_REPETITIONS', 10)),
    'WORKERS': int(os.environ.get('LSD_WORKERS', 1)),
    # Sizes of the property sweeps run by `manage.py verify`.
    'VERIFY': {
        'INSTANCES': 50,
        'STATE_PAIRS': 20,
        'CYCLIC_INSTANCES': 10,
        'CYCLIC_HORIZON': 12,
        'BNB_INSTANCES': 100,
        'ENVELOPE_INSTANCES': 10,
        'ENVELOPE_HORIZON': 4000,
        'GREEDY_REPETITIONS': 100,
        # Block search used by the envelope runs.
        'SOLVER': 'enumerate',
    },
}
