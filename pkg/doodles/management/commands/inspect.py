from django.core.management.base import BaseCommand

from doodles.classify import E_REGION, V_REGION, classify, inner_complement, label_boundary
from doodles.exceptions import ClassificationError

from ._common import load_entry


class Command(BaseCommand):
    help = 'Report code, classification, inner complements, cycle code and twin word of a catalog doodle'

    def add_arguments(self, parser):
        parser.add_argument('name')
        parser.add_argument('--dir', default=None, help='catalog directory')

    def handle(self, *args, **options):
        entry = load_entry(options['name'], options['dir'])
        diagram = entry.diagram()
        classification = classify(diagram)
        kind = 'super prime' if classification.is_super_prime else 'prime' if classification.is_prime else 'not prime'
        self.stdout.write(f"name: {entry.name}")
        self.stdout.write(f"code: {entry.code}")
        self.stdout.write(f"components: m={classification.m}")
        self.stdout.write(f"connectivity: {classification.connectivity} ({kind})")
        self.stdout.write(f"gauss: {entry.gauss}")
        for r, region in enumerate(diagram.face_orbits):
            complement = inner_complement(diagram, r)
            shape = 'disk' if complement.is_disk else 'acyclic' if complement.is_acyclic else f"betti_1={complement.betti_1}"
            try:
                labels = label_boundary(diagram, r)
                boundary = f"{labels.count(V_REGION)} v-regions, {labels.count(E_REGION)} e-regions"
            except ClassificationError as e:
                boundary = f"boundary not labelled ({e})"
            self.stdout.write(
                f"region {r} ({region.size}-gon): inner complement {complement.vertex_count} crossings, "
                f"{complement.region_count} regions, {shape}; {boundary}"
            )
        self.stdout.write(f"cycle code: {entry.hamiltonian_code or 'none found'}")
        self.stdout.write(f"twin word: {entry.twin_word}")
