import logging

from django.core.management.base import BaseCommand, CommandError

from doodles.catalog import Catalog
from doodles.exceptions import DoodleError
from doodles.search import SearchCache, SearchConfig, enumerate_doodles

from ._common import require_settings

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Enumerate the prime minimal doodles with n crossings and write their catalog'

    def add_arguments(self, parser):
        parser.add_argument('n', type=int)
        parser.add_argument('--workers', type=int, default=None)
        parser.add_argument('--out', default=None, help='catalog directory')
        parser.add_argument('--no-cache', action='store_true', help='ignore and overwrite the cached search result')
        parser.add_argument('--no-symmetry', action='store_true', help='seed the chord search with every chord')
        parser.add_argument('--dump-dir', default=None, help='write every admissible matrix here')

    def handle(self, *args, **options):
        config = require_settings(
            'DOODLE_CATALOG_DIR', 'DOODLE_CACHE_DIR', 'DOODLE_WORKERS', 'DOODLE_CROSSING_BUDGET', 'DOODLE_DUMP_DIR',
        )
        n = options['n']
        budget = config['DOODLE_CROSSING_BUDGET']
        if not 6 <= n <= budget:
            raise CommandError(f"n must lie between 6 and the crossing budget {budget}, got {n}")
        workers = options['workers'] or config['DOODLE_WORKERS']
        if workers < 1:
            raise CommandError(f"need at least one worker, got {workers}")
        out_dir = options['out'] or config['DOODLE_CATALOG_DIR']
        symmetry = not options['no_symmetry']
        search = SearchConfig(n, workers, symmetry, options['dump_dir'] or config['DOODLE_DUMP_DIR'])

        cache = SearchCache(config['DOODLE_CACHE_DIR'])
        result = None if options['no_cache'] else cache.load(n, symmetry)
        try:
            if result is None:
                result = enumerate_doodles(n, search)
                cache.save(result, symmetry)
            catalog = Catalog.from_search(result, budget)
            path = catalog.write(out_dir)
        except DoodleError as e:
            raise CommandError(str(e)) from e
        except OSError as e:
            raise CommandError(f"Could not write catalog for n={n} to {out_dir}: {e}") from e

        for entry in catalog.entries:
            self.stdout.write(f"{entry.name}\t{entry.code}\tconnectivity {entry.connectivity}")
        self.stdout.write(self.style.SUCCESS(f"{len(catalog.entries)} doodles with {n} crossings written to {path}"))
