from django.core.management.base import BaseCommand

from doodles.diagram import canonical_key, reduce
from doodles.twin import closure, normalize, to_twin_word

from ._common import load_entry


class Command(BaseCommand):
    help = 'Read a catalog doodle as a twin word and check that its closure reduces back'

    def add_arguments(self, parser):
        parser.add_argument('name')
        parser.add_argument('--dir', default=None, help='catalog directory')

    def handle(self, *args, **options):
        entry = load_entry(options['name'], options['dir'])
        diagram = entry.diagram()
        word = to_twin_word(diagram)
        self.stdout.write(f"word: {word}")
        self.stdout.write(f"normal form: {normalize(word)}")
        same = canonical_key(reduce(closure(word))) == canonical_key(diagram)
        self.stdout.write(f"closure reduces to {entry.name}: {'yes' if same else 'no'}")
