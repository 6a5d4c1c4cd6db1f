from django.core.management.base import BaseCommand, CommandError

from doodles.exceptions import DoodleError
from doodles.render import write_svg

from ._common import resolve_diagram


class Command(BaseCommand):
    help = 'Draw a catalog entry or a Gauss code as SVG'

    def add_arguments(self, parser):
        parser.add_argument('target', help='catalog name such as S6^3_1, or a Gauss code')
        parser.add_argument('--out', required=True)
        parser.add_argument('--dir', default=None, help='catalog directory')

    def handle(self, *args, **options):
        diagram, title = resolve_diagram(options['target'], options['dir'])
        try:
            write_svg(diagram, options['out'], title)
        except DoodleError as e:
            raise CommandError(str(e)) from e
        except OSError as e:
            raise CommandError(f"Could not write {options['out']}: {e}") from e
        self.stdout.write(self.style.SUCCESS(f"Wrote {options['out']}"))
