from django.apps import AppConfig
from django.conf import settings
import logging

"""
    Application entry for the doodle census. Nothing is preloaded: the search is
    driven from management commands, so ready() only reports where catalogs and
    caches live.
"""

logger = logging.getLogger(__name__)

class DoodlesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'doodles'

    def ready(self):
        logger.debug(f"Catalog directory: {settings.DOODLE_CATALOG_DIR}")
        logger.debug(f"Search cache directory: {settings.DOODLE_CACHE_DIR}")
