from django.core.management.base import BaseCommand, CommandError

from doodles.codes import enumerate_codes
from doodles.exceptions import CodeError


class Command(BaseCommand):
    help = 'Print the face-size codes a prime minimal doodle with n crossings can have'

    def add_arguments(self, parser):
        parser.add_argument('n', type=int)
        parser.add_argument('--all', action='store_true', help='include codes with a region of (n+1)/2 edges or more')

    def handle(self, *args, **options):
        try:
            codes = enumerate_codes(options['n'], prime_only=not options['all'])
        except CodeError as e:
            raise CommandError(str(e)) from e
        for code in codes:
            self.stdout.write(str(code))
