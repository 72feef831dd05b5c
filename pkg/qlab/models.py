from django.db import models, transaction
from django.utils.translation import gettext_lazy as _
import logging

from .reports import FAIL, PASS, SKIP

logger = logging.getLogger(__name__)

# ==================== RUN LEDGER ====================

class VerificationRun(models.Model):
    """One recorded ``verify`` invocation"""
    suite = models.CharField(
        _('suite'),
        max_length=32
    )
    parameters = models.JSONField(
        _('parameters'),
        default=dict,
        blank=True
    )
    passed = models.BooleanField(
        _('passed'),
        help_text=_("Did every non-skipped check pass?")
    )
    checked = models.PositiveIntegerField(
        _('checked'),
        default=0
    )
    failed = models.PositiveIntegerField(
        _('failed'),
        default=0
    )
    skipped = models.PositiveIntegerField(
        _('skipped'),
        default=0
    )
    report = models.JSONField(
        _('report'),
        default=dict,
        blank=True
    )
    created_at = models.DateTimeField(
        _('created at'),
        auto_now_add=True
    )

    class Meta:
        verbose_name = _('verification run')
        verbose_name_plural = _('verification runs')
        ordering = ['-created_at', '-id']

    def __str__(self):
        return f"{self.suite} {'passed' if self.passed else 'FAILED'} ({self.checked} checks)"

    @classmethod
    def record(cls, report):
        """Store a SuiteReport and its checks in one transaction."""
        counts = report.counts()
        with transaction.atomic():
            run = cls.objects.create(
                suite=report.suite,
                parameters=report.parameters,
                passed=report.passed,
                checked=len(report.checks),
                failed=counts[FAIL],
                skipped=counts[SKIP],
                report=report.to_dict(),
            )
            CheckRecord.objects.bulk_create([
                CheckRecord(
                    run=run,
                    name=c.name,
                    status=c.status,
                    residual=c.residual,
                    witness=c.witness or '',
                )
                for c in report.checks
            ])
        logger.info(f"Recorded run {run.pk} of suite {run.suite}")
        return run


class CheckRecord(models.Model):
    STATUS_CHOICES = [
        (PASS, 'Pass'),
        (FAIL, 'Fail'),
        (SKIP, 'Skip'),
    ]

    run = models.ForeignKey(
        VerificationRun,
        on_delete=models.CASCADE,
        related_name='checks',
        verbose_name=_('run')
    )
    name = models.CharField(_('name'), max_length=255)
    status = models.CharField(
        _('status'),
        max_length=4,
        choices=STATUS_CHOICES
    )
    residual = models.TextField(_('residual'), default='0')
    witness = models.TextField(_('witness'), blank=True)

    class Meta:
        verbose_name = _('check record')
        verbose_name_plural = _('check records')
        ordering = ['run', 'id']

    def __str__(self):
        return f"{self.name}: {self.get_status_display()}"
