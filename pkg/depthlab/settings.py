"""
Django settings for depthlab project.
"""

import os
from pathlib import Path
from decouple import Csv, config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('DJANGO_SECRET_KEY', default='django-insecure-dev-key-change-in-production')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = config('DJANGO_DEBUG', default=True, cast=bool)

ALLOWED_HOSTS = config('DJANGO_ALLOWED_HOSTS', default='localhost,127.0.0.1', cast=Csv())


# Application definition

INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.staticfiles',
    'rest_framework',
    'corsheaders',
    'geometry',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'corsheaders.middleware.CorsMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'depthlab.urls'

WSGI_APPLICATION = 'depthlab.wsgi.application'


# The geometry app keeps no models; results live in files under GEOMETRY_OUTPUT_DIR.
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/4.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True

STATIC_URL = 'static/'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# REST Framework settings
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_PARSER_CLASSES': [
        'rest_framework.parsers.JSONParser',
    ],
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [],
}

# CORS settings
CORS_ALLOWED_ORIGINS = [
    "http://localhost:8000",
    "http://127.0.0.1:8000",
]


# Geometry settings
GEOMETRY_WORKERS = config('GEOMETRY_WORKERS', default=os.cpu_count() or 1, cast=int)
GEOMETRY_OUTPUT_DIR = config('GEOMETRY_OUTPUT_DIR', default='runs')
GEOMETRY_GRID = config('GEOMETRY_GRID', default=1_000_000, cast=int)
GEOMETRY_DENOMINATOR = config('GEOMETRY_DENOMINATOR', default=1_000_000, cast=int)
GEOMETRY_JITTER = config('GEOMETRY_JITTER', default=8, cast=int)
GEOMETRY_MAX_REJECTIONS = config('GEOMETRY_MAX_REJECTIONS', default=10_000, cast=int)
GEOMETRY_API_MAX_POINTS = config('GEOMETRY_API_MAX_POINTS', default=40, cast=int)
GEOMETRY_LOG_LEVEL = config('GEOMETRY_LOG_LEVEL', default='INFO')


LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{levelname} {asctime} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'geometry': {
            'handlers': ['console'],
            'level': GEOMETRY_LOG_LEVEL,
            'propagate': False,
        },
    },
}
