import logging

from django.core.management.base import BaseCommand, CommandError

from qlab.dualpolar import dual_polar_graph, export_graph, lagrangian_count
from qlab.errors import NotPrimePower, OutOfRange, QlabError
from qlab.fields import field_new

from ._options import USAGE_ERROR, add_size_arguments, sizes

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Enumerate the dual polar graph C_d(q) and optionally export it as JSON."

    def add_arguments(self, parser):
        add_size_arguments(parser)
        parser.add_argument('--emit', default=None, help='write vertices and distance matrices to this path')

    def handle(self, *args, **options):
        _, d, q = sizes(options)
        try:
            F = field_new(q)
        except (NotPrimePower, OutOfRange) as e:
            raise CommandError(str(e), returncode=USAGE_ERROR) from e

        try:
            G = dual_polar_graph(d, F, options['limit'])
            if options['emit']:
                export_graph(G, options['emit'])
        except QlabError as e:
            logger.error(f"Building C_{d}({q}) failed: {str(e)}")
            raise CommandError(str(e), returncode=1) from e

        self.stdout.write(f"C_{d}({q}): {G.size} vertices (expected {lagrangian_count(d, q)})")
        valencies = [int(A.entry_sum().as_fraction()) // G.size for A in G.matrices]
        self.stdout.write(f"valencies: {' '.join(str(k) for k in valencies)}")
        if options['emit']:
            self.stdout.write(self.style.SUCCESS(f"Exported {G.size} vertices to {options['emit']}"))
