import logging

from django.core.management.base import BaseCommand, CommandError
from django.db import DatabaseError

from qlab.models import VerificationRun
from qlab.reports import FAIL
from qlab.suites import SUITE_NAMES, run_suite

from ._options import USAGE_ERROR, add_size_arguments, sizes

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Run a named verification suite and print its report."

    def add_arguments(self, parser):
        parser.add_argument('--suite', choices=SUITE_NAMES, default='all')
        add_size_arguments(parser)
        parser.add_argument('--tol', type=float, default=None, help='tolerance for floating checks')
        parser.add_argument('--format', choices=['json', 'text'], default='json')
        parser.add_argument('--output', default=None, help='write the report here instead of stdout')
        parser.add_argument('--timings', action='store_true', help='include wall time per check')
        parser.add_argument('--record', action='store_true', help='store the run in the ledger')

    def handle(self, *args, **options):
        n, d, q = sizes(options)
        tol = options['tol']
        if tol is not None and tol <= 0:
            raise CommandError(f"--tol must be positive, got {tol}", returncode=USAGE_ERROR)

        report = run_suite(options['suite'], n=n, d=d, q=q, tol=tol, limit=options['limit'])
        if options['format'] == 'json':
            text = report.to_json(options['timings'])
        else:
            text = report.to_text(options['timings'])

        if options['output']:
            try:
                with open(options['output'], 'w', encoding='utf-8') as handle:
                    handle.write(text)
            except OSError as e:
                logger.error(f"Writing report to {options['output']} failed: {str(e)}")
                raise CommandError(f"cannot write report: {str(e)}", returncode=1) from e
        else:
            self.stdout.write(text, ending='')

        if options['record']:
            try:
                run = VerificationRun.record(report)
                self.stderr.write(f"Recorded as run {run.pk}")
            except DatabaseError as e:
                logger.error(f"Recording run failed: {str(e)}")
                self.stderr.write(self.style.WARNING(f"Run not recorded: {str(e)}"))

        if not report.passed:
            raise CommandError(f"suite {report.suite}: {report.counts()[FAIL]} check(s) failed", returncode=1)
