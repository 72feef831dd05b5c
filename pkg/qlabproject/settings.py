"""
Django settings for the qlab project.

The project hosts a single application, ``qlab``, which provides the exact
q-analog construction library, its verification suites and the management
commands behind ``python -m qlab``. There is no web surface; Django supplies
configuration, the run ledger database and the command framework.
"""

from pathlib import Path
import os
import dj_database_url

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# The key only guards the unused session/signing machinery.
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'qlab-local-only-not-secret')

DEBUG = os.environ.get('DJANGO_DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'qlabproject.settings')

# Application definition

INSTALLED_APPS = [
    'qlab',
]

MIDDLEWARE = []


# Database
# Parses DATABASE_URL when present, sqlite next to the project otherwise.

DATABASES = {
    'default': dj_database_url.config(
        default='sqlite:///' + os.path.join(BASE_DIR, 'db.sqlite3'),
        conn_max_age=600,
    )
}


# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = True

USE_TZ = True


# Default primary key field type

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


# Logging: one console handler on stderr, reports stay on stdout.

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'qlab': {
            'handlers': ['console'],
            'level': os.environ.get('QLAB_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}

"""
qlab Settings

Enumeration caps, floating tolerances and CLI defaults. Every value can be
overridden per run from the command line.
"""

# Enumeration caps
QLAB_SUBSPACE_LIMIT = 10 ** 6
QLAB_LAGRANGIAN_LIMIT = 10 ** 5
QLAB_SYM_LIMIT = 10 ** 5
QLAB_HAMMING_LIMIT = 12
QLAB_CUBE_LIMIT = 10
QLAB_FIELD_LIMIT = 64

# Floating checks (W(S) projectors, Terwilliger dimension count)
QLAB_TOLERANCE = 1e-8
QLAB_WS_VERTEX_LIMIT = 200
QLAB_TERWILLIGER_LIMIT = 64

# CLI defaults
QLAB_DEFAULT_N = 3
QLAB_DEFAULT_D = 2
QLAB_DEFAULT_Q = 2
