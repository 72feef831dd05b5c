import logging

from django.core.management.base import BaseCommand, CommandError

from qlab.conf import setting
from qlab.dualpolar import dual_polar_graph
from qlab.errors import NotPrimePower, OutOfRange, QlabError, UnsupportedScale
from qlab.fields import field_new
from qlab.hypercube import build_Aq, build_Aq_tensor, cube_context, hamming_distance_matrices
from qlab.lattice import build_lattice, build_RLKE, build_Y
from qlab.matrices import export_matrix
from qlab.quotient import build_zeta

from ._options import USAGE_ERROR, add_size_arguments, scale_argument, sizes

logger = logging.getLogger(__name__)

OBJECTS = [
    'lattice-R', 'lattice-L', 'lattice-K', 'lattice-Y', 'zeta',
    'aq', 'aq-tensor', 'hamming-A1', 'dualpolar-A1',
]


class Command(BaseCommand):
    help = "Export one exact operator in the qlab matrix JSON format."

    def add_arguments(self, parser):
        parser.add_argument('--object', choices=OBJECTS, required=True)
        add_size_arguments(parser)
        parser.add_argument('--scale', default='1', help='exponent scale t of the weighted cube (e.g. 1, 0, -1/2)')
        parser.add_argument('--output', required=True)

    def handle(self, *args, **options):
        n, d, q = sizes(options)
        scale = scale_argument(options['scale'])
        name = options['object']
        try:
            op = self.build(name, n, d, q, scale, options['limit'])
        except (NotPrimePower, UnsupportedScale) as e:
            raise CommandError(str(e), returncode=USAGE_ERROR) from e
        except QlabError as e:
            logger.error(f"Building {name} failed: {str(e)}")
            raise CommandError(str(e), returncode=1) from e

        try:
            export_matrix(op, options['output'])
        except QlabError as e:
            raise CommandError(str(e), returncode=1) from e
        rows, cols = op.shape
        self.stdout.write(self.style.SUCCESS(
            f"Exported {name} ({rows}x{cols}, {len(op.nonzeros())} nonzeros) to {options['output']}"
        ))

    def build(self, name, n, d, q, scale, limit):
        if name in ('aq', 'aq-tensor', 'hamming-A1'):
            cube_limit = setting('CUBE_LIMIT')
            if n > cube_limit:
                raise OutOfRange(f"N={n} exceeds the cube limit {cube_limit}")
            if name == 'hamming-A1':
                return hamming_distance_matrices(n)[1]
            ctx = cube_context(n, q, scale)
            return build_Aq(ctx) if name == 'aq' else build_Aq_tensor(ctx)

        F = field_new(q)
        if name == 'dualpolar-A1':
            return dual_polar_graph(d, F, limit).matrices[1]
        if name == 'zeta':
            return build_zeta(n, F, limit).matrix
        ctx = build_lattice(n, F, limit)
        ops = build_RLKE(ctx)
        return {
            'lattice-R': lambda: ops.R,
            'lattice-L': lambda: ops.L,
            'lattice-K': lambda: ops.K,
            'lattice-Y': lambda: build_Y(ctx, ops),
        }[name]()
