from django.core.management.base import BaseCommand, CommandError

from doodles.catalog import Catalog, census_table
from doodles.exceptions import DoodleError

from ._common import require_settings


class Command(BaseCommand):
    help = 'Print the census table: per crossing and component count, prime and super-prime doodles'

    def add_arguments(self, parser):
        parser.add_argument('--to', type=int, required=True, dest='to')
        parser.add_argument('--from', type=int, default=6, dest='start')
        parser.add_argument('--dir', default=None, help='catalog directory')

    def handle(self, *args, **options):
        catalog_dir = options['dir'] or require_settings('DOODLE_CATALOG_DIR')['DOODLE_CATALOG_DIR']
        catalogs = []
        for n in range(options['start'], options['to'] + 1):
            try:
                catalogs.append(Catalog.load(catalog_dir, n))
            except (DoodleError, OSError) as e:
                raise CommandError(f"Missing or unreadable catalog for n={n}: {e}") from e
        self.stdout.write(census_table(catalogs), ending='')
