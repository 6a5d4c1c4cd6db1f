from django.core.management.base import BaseCommand

from doodles.hamiltonian import cycle_code, find_hamiltonian

from ._common import load_entry


class Command(BaseCommand):
    help = 'Search a catalog doodle for a hamiltonian circuit and print its cycle code'

    def add_arguments(self, parser):
        parser.add_argument('name')
        parser.add_argument('--dir', default=None, help='catalog directory')

    def handle(self, *args, **options):
        entry = load_entry(options['name'], options['dir'])
        diagram = entry.diagram()
        circuit = find_hamiltonian(diagram)
        if circuit is None:
            self.stdout.write('none found')
            return
        self.stdout.write(f"circuit: {' '.join(str(c) for c in circuit.order)}")
        self.stdout.write(f"cycle code: {cycle_code(diagram, circuit)}")
