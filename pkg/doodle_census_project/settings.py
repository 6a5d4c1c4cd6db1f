import os
import sys
from pathlib import Path
from dotenv import load_dotenv

# Build paths inside the project
BASE_DIR = Path(__file__).resolve().parent.parent

# Load .env variables
load_dotenv(os.path.join(BASE_DIR, '.env'))

sys.path.insert(0, str(BASE_DIR))
from logging_config import build_logging_config  # noqa: E402

# Ensure directories exist
LOG_DIR = os.getenv('DOODLE_LOG_DIR', os.path.join(BASE_DIR, 'logs'))
os.makedirs(LOG_DIR, exist_ok=True)

# Census settings
DOODLE_CATALOG_DIR = os.getenv('DOODLE_CATALOG_DIR', os.path.join(BASE_DIR, 'catalog'))
DOODLE_CACHE_DIR = os.getenv('DOODLE_CACHE_DIR', os.path.join(BASE_DIR, 'cache'))
DOODLE_DUMP_DIR = os.getenv('DOODLE_DUMP_DIR') or None
DOODLE_WORKERS = int(os.getenv('DOODLE_WORKERS', '1'))
DOODLE_CROSSING_BUDGET = int(os.getenv('DOODLE_CROSSING_BUDGET', '14'))
os.makedirs(DOODLE_CATALOG_DIR, exist_ok=True)
os.makedirs(DOODLE_CACHE_DIR, exist_ok=True)

LOGGING = build_logging_config(LOG_DIR, level=os.getenv('DOODLE_LOG_LEVEL', 'INFO'))

# Quick-start development settings
SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'django-insecure-doodle-census-local-only')
DEBUG = os.getenv('DJANGO_DEBUG', '1') == '1'
ALLOWED_HOSTS = ['localhost', '127.0.0.1']

# Application definition
INSTALLED_APPS = [
    'doodles',
]

# Database (unused by the census, kept so the test runner has a default alias)
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
