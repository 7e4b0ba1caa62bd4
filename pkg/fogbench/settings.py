"""
Django settings for the fogbench project.

The project hosts the ``workbench`` application: a verification workbench for
first-order grammars and pushdown systems. Everything tunable is read from the
environment so the management commands can be driven from scripts.
"""

import os
import sys
from pathlib import Path

import dj_database_url
from django.core.exceptions import ImproperlyConfigured

BASE_DIR = Path(__file__).resolve().parent.parent


def env_list(name: str, default: str = '') -> list[str]:
    """Read a comma-separated environment variable."""
    return [item.strip() for item in os.environ.get(name, default).split(',') if item.strip()]


def env_bool(name: str, default: bool) -> bool:
    """Read a boolean-like environment variable."""
    return os.environ.get(name, str(default)).lower() in ('1', 'true', 'yes', 'on')


def env_int(name: str, default: int) -> int:
    """Read an integer environment variable."""
    try:
        return int(os.environ.get(name, default))
    except (TypeError, ValueError):
        return default


DEBUG = env_bool('DJANGO_DEBUG', False)
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY')
if not SECRET_KEY:
    # The workbench is a command-line tool first; only a served admin needs a real key.
    if DEBUG or ('test' in sys.argv) or not env_bool('FOGBENCH_SERVE_ADMIN', False):
        SECRET_KEY = 'dev-secret-key-change-me'
    else:
        raise ImproperlyConfigured('DJANGO_SECRET_KEY must be set when the admin is served')

ALLOWED_HOSTS = env_list('DJANGO_ALLOWED_HOSTS', 'localhost,127.0.0.1')

INSTALLED_APPS = [
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',
    'rest_framework',
    'workbench.apps.WorkbenchConfig',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'fogbench.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

WSGI_APPLICATION = 'fogbench.wsgi.application'

db_url = os.environ.get('DATABASE_URL')
if not db_url or '://' not in db_url:
    # Local sqlite keeps persisted basis runs next to the checkout.
    db_url = f"sqlite:///{BASE_DIR / 'db.sqlite3'}"
DATABASES = {
    'default': dj_database_url.parse(db_url, conn_max_age=600),
}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

STATIC_URL = '/static/'
STATIC_ROOT = BASE_DIR / 'staticfiles'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': ('rest_framework.renderers.JSONRenderer',),
}

# Budgets and defaults of the workbench computations. Every entry can be
# overridden per call; these are the values used when a caller passes None.
WORKBENCH = {
    'HARDY_BUDGET': env_int('WORKBENCH_BUDGET', 10_000_000),
    'GAME_BUDGET': env_int('WORKBENCH_GAME_BUDGET', 200_000),
    'STATE_BUDGET': env_int('WORKBENCH_STATE_BUDGET', 20_000),
    'ENUMERATION_BUDGET': env_int('WORKBENCH_ENUMERATION_BUDGET', 1_000_000),
    'MAX_THRESHOLD': env_int('WORKBENCH_MAX_THRESHOLD', 100_000),
    'EPSILON_STEP_BUDGET': env_int('WORKBENCH_EPSILON_STEPS', 100_000),
    'VARIABLE_MODE': os.environ.get('WORKBENCH_VARIABLE_MODE', 'self_loop'),
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {'format': '%(levelname)s %(name)s: %(message)s'},
    },
    'handlers': {
        'console': {'class': 'logging.StreamHandler', 'formatter': 'plain'},
    },
    'loggers': {
        'workbench': {
            'handlers': ['console'],
            'level': os.environ.get('WORKBENCH_LOG_LEVEL', 'WARNING').upper(),
            'propagate': False,
        },
        'django.request': {
            'handlers': ['console'],
            'level': 'ERROR',
            'propagate': True,
        },
    },
}

# Optional Sentry error reporting. Install sentry-sdk and set SENTRY_DSN.
SENTRY_DSN = os.environ.get('SENTRY_DSN')
if SENTRY_DSN:
    try:
        import sentry_sdk
        from sentry_sdk.integrations.django import DjangoIntegration

        sentry_sdk.init(
            dsn=SENTRY_DSN,
            integrations=[DjangoIntegration()],
            traces_sample_rate=float(os.environ.get('SENTRY_TRACES_SAMPLE_RATE', '0') or 0),
            send_default_pii=False,
        )
    except Exception:
        # Safe no-op if sentry-sdk isn't installed or init fails.
        pass
