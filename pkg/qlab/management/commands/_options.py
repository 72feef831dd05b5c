"""Arguments shared by the qlab management commands."""
from fractions import Fraction

from django.core.management.base import CommandError

from qlab.conf import setting

USAGE_ERROR = 2


def add_size_arguments(parser):
    parser.add_argument('--n', type=int, default=None, help='lattice / cube dimension N')
    parser.add_argument('--d', type=int, default=None, help='dual polar rank d')
    parser.add_argument('--q', type=int, default=None, help='field order q (a prime power)')
    parser.add_argument('--limit', type=int, default=None, help='enumeration cap for this run')


def sizes(options):
    """Resolve --n/--d/--q against the settings and reject values no suite accepts."""
    n = setting('DEFAULT_N', options.get('n'))
    d = setting('DEFAULT_D', options.get('d'))
    q = setting('DEFAULT_Q', options.get('q'))
    if n < 1:
        raise CommandError(f"--n must be at least 1, got {n}", returncode=USAGE_ERROR)
    if d < 1:
        raise CommandError(f"--d must be at least 1, got {d}", returncode=USAGE_ERROR)
    if q < 2:
        raise CommandError(f"--q must be at least 2, got {q}", returncode=USAGE_ERROR)
    limit = options.get('limit')
    if limit is not None and limit < 1:
        raise CommandError(f"--limit must be positive, got {limit}", returncode=USAGE_ERROR)
    return n, d, q


def scale_argument(text):
    """Parse '1', '-1/2', '0.25' as an exact exponent scale."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise CommandError(f"invalid --scale {text!r}: {str(e)}", returncode=USAGE_ERROR) from e
