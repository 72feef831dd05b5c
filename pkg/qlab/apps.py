from django.apps import AppConfig


class QlabConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "qlab"
    verbose_name = "q-analog verification lab"
