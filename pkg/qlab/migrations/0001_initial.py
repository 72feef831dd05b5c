# Generated by Django 5.0.6 on 2026-10-19 09:12

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="VerificationRun",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("suite", models.CharField(max_length=32, verbose_name="suite")),
                (
                    "parameters",
                    models.JSONField(blank=True, default=dict, verbose_name="parameters"),
                ),
                (
                    "passed",
                    models.BooleanField(
                        help_text="Did every non-skipped check pass?",
                        verbose_name="passed",
                    ),
                ),
                (
                    "checked",
                    models.PositiveIntegerField(default=0, verbose_name="checked"),
                ),
                (
                    "failed",
                    models.PositiveIntegerField(default=0, verbose_name="failed"),
                ),
                (
                    "skipped",
                    models.PositiveIntegerField(default=0, verbose_name="skipped"),
                ),
                (
                    "report",
                    models.JSONField(blank=True, default=dict, verbose_name="report"),
                ),
                (
                    "created_at",
                    models.DateTimeField(auto_now_add=True, verbose_name="created at"),
                ),
            ],
            options={
                "verbose_name": "verification run",
                "verbose_name_plural": "verification runs",
                "ordering": ["-created_at", "-id"],
            },
        ),
        migrations.CreateModel(
            name="CheckRecord",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("name", models.CharField(max_length=255, verbose_name="name")),
                (
                    "status",
                    models.CharField(
                        choices=[("pass", "Pass"), ("fail", "Fail"), ("skip", "Skip")],
                        max_length=4,
                        verbose_name="status",
                    ),
                ),
                (
                    "residual",
                    models.TextField(default="0", verbose_name="residual"),
                ),
                ("witness", models.TextField(blank=True, verbose_name="witness")),
                (
                    "run",
                    models.ForeignKey(
                        on_delete=django.db.models.deletion.CASCADE,
                        related_name="checks",
                        to="qlab.verificationrun",
                        verbose_name="run",
                    ),
                ),
            ],
            options={
                "verbose_name": "check record",
                "verbose_name_plural": "check records",
                "ordering": ["run", "id"],
            },
        ),
    ]
