import logging

from django.core.management.base import BaseCommand, CommandError
from django.db import DatabaseError

from qlab.models import VerificationRun

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "List recorded verification runs, newest first."

    def add_arguments(self, parser):
        parser.add_argument('--suite', default=None, help='only runs of this suite')
        parser.add_argument('--count', type=int, default=20, help='number of runs to show')

    def handle(self, *args, **options):
        runs = VerificationRun.objects.all()
        if options['suite']:
            runs = runs.filter(suite=options['suite'])
        try:
            runs = list(runs[:options['count']])
        except DatabaseError as e:
            logger.error(f"Reading the run ledger failed: {str(e)}")
            raise CommandError(f"cannot read the run ledger: {str(e)}", returncode=1) from e

        if not runs:
            self.stdout.write("No recorded runs.")
            return
        for run in runs:
            status = 'PASS' if run.passed else 'FAIL'
            params = ' '.join(f"{k}={v}" for k, v in sorted(run.parameters.items()) if v is not None)
            self.stdout.write(
                f"{run.pk:5}  {run.created_at:%Y-%m-%d %H:%M:%S}  {run.suite:14} {status}  "
                f"{run.checked} checks, {run.failed} failed, {run.skipped} skipped  {params}"
            )
