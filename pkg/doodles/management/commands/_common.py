import logging

from django.conf import settings
from django.core.management.base import CommandError

from doodles.catalog import find_entry
from doodles.exceptions import DoodleError
from doodles.gauss import rebuild_from_gauss

logger = logging.getLogger(__name__)


def require_settings(*names) -> dict:
    missing = [name for name in names if not hasattr(settings, name)]
    if missing:
        raise CommandError(f"Missing settings: {', '.join(missing)}")
    return {name: getattr(settings, name) for name in names}


def load_entry(name: str, catalog_dir: str = None):
    catalog_dir = catalog_dir or require_settings('DOODLE_CATALOG_DIR')['DOODLE_CATALOG_DIR']
    try:
        return find_entry(catalog_dir, name)
    except (DoodleError, OSError) as e:
        raise CommandError(str(e)) from e


def resolve_diagram(target: str, catalog_dir: str = None):
    """A catalog name gives that entry's diagram; anything else is read as a Gauss code."""
    if target[:1] in ('P', 'S', 'N') and '^' in target:
        entry = load_entry(target, catalog_dir)
        return entry.diagram(), entry.name
    try:
        return rebuild_from_gauss(target), target
    except DoodleError as e:
        raise CommandError(str(e)) from e
