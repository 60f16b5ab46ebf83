"""
Django settings for the powerpoly project.

The project has no web surface: it is a Django app driven entirely through
management commands (see voting/management/commands). Settings below only
cover the pieces those commands touch: the optional result store, logging,
and the engine caps.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

from pathlib import Path
import os

# Load environment variables from .env file (if python-dotenv is installed)
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    # python-dotenv not installed, will use system environment variables only
    pass

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('POWERPOLY_SECRET_KEY', 'powerpoly-local-only-key')

DEBUG = os.getenv('POWERPOLY_DEBUG', 'False').lower() in ('1', 'true', 'yes')

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'voting',
]


# Database
# Only used by the optional result store (census --store, tables --store).

DATABASES = {
    'default': {
        'ENGINE': os.getenv('DB_ENGINE', 'django.db.backends.sqlite3'),
        'NAME': os.getenv('DB_NAME', str(BASE_DIR / 'powerpoly.sqlite3')),
    }
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# Default primary key field type
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging
POWERPOLY_LOG_LEVEL = os.getenv('POWERPOLY_LOG_LEVEL', 'INFO')

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
    'loggers': {
        'voting': {
            'handlers': ['console'],
            'level': POWERPOLY_LOG_LEVEL,
            'propagate': False,
        },
    },
}


# Engine configuration
# Worker processes for batch drivers (census, tables, distances)
POWERPOLY_THREADS = int(os.getenv('POWERPOLY_THREADS', '1'))

# Brute-force coalition scans cover 2**n subsets
POWERPOLY_COALITION_CAP = int(os.getenv('POWERPOLY_COALITION_CAP', '24'))

# Minimum-sum representation integer program
POWERPOLY_ILP_CAP = int(os.getenv('POWERPOLY_ILP_CAP', '12'))

# Weighted-game catalog enumeration (Dedekind growth beyond 6 voters)
POWERPOLY_CENSUS_CAP = int(os.getenv('POWERPOLY_CENSUS_CAP', '6'))
POWERPOLY_CENSUS_TOTAL_CAP = int(os.getenv('POWERPOLY_CENSUS_TOTAL_CAP', '10000'))

# Decimal places used when rendering exact values
POWERPOLY_DECIMALS = int(os.getenv('POWERPOLY_DECIMALS', '3'))

# Hit-and-run defaults
POWERPOLY_MC_BURN_IN = int(os.getenv('POWERPOLY_MC_BURN_IN', '1000'))
POWERPOLY_MC_SAMPLES = int(os.getenv('POWERPOLY_MC_SAMPLES', '100000'))
